//! Submonoids of the nonnegative rationals: membership, divisibility, the Dzikovskyi
//! reduction, half-group and floppiness decisions, and the set of indecomposable elements.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rat::{self, is_prime, Rat};

/// Largest scaled generator accepted for finitely generated monoids; the conductor table
/// has size about `min * max` of the scaled generators.
const MAX_TABLE: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("generator {0} is not positive")]
    NonPositiveGenerator(String),
    #[error("scaled semigroup too large for exact tables (bound {0})")]
    TooLarge(u64),
    #[error("unknown closure `{0}`")]
    UnknownClosure(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("delta_p is undefined at 0")]
    DeltaOfZero,
    #[error("contract violation: {0}")]
    Contract(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosureId {
    /// `{0, 2, 3, 4, ...}`
    OmegaMinusOne,
    /// Generated by `2^-n` and `1/3 + 2^-n` for `n >= 1`.
    DyadicThirds,
}

impl ClosureId {
    pub fn name(self) -> &'static str {
        match self {
            ClosureId::OmegaMinusOne => "omega-minus-1",
            ClosureId::DyadicThirds => "dyadic-thirds",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "omega-minus-1" => Some(ClosureId::OmegaMinusOne),
            "dyadic-thirds" => Some(ClosureId::DyadicThirds),
            _ => None,
        }
    }
}

/// Serializable description of a monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonoidDesc {
    /// Monoid generated by finitely many positive rationals.
    FinGen { generators: Vec<Rat> },
    /// Nonnegative part of the subgroup generated by `generators`, with the primes in
    /// `inverted` made invertible (so `[1]` with `[2]` is the nonnegative dyadics).
    GroupCone { generators: Vec<Rat>, inverted: Vec<u64> },
    /// A named family with closed-form membership.
    Closure { id: ClosureId },
}

impl MonoidDesc {
    pub fn fingen(gens: &[i64]) -> Self {
        MonoidDesc::FinGen { generators: gens.iter().map(|&g| rat::int(g)).collect() }
    }

    pub fn named(name: &str) -> Result<Self, MonoidError> {
        match name {
            "naturals" | "Z+" => Ok(Self::fingen(&[1])),
            "even" | "2Z+" => Ok(Self::fingen(&[2])),
            "dyadic" => Ok(MonoidDesc::GroupCone { generators: vec![rat::int(1)], inverted: vec![2] }),
            _ => ClosureId::from_name(name)
                .map(|id| MonoidDesc::Closure { id })
                .ok_or_else(|| MonoidError::UnknownClosure(name.to_string())),
        }
    }
}

/// Numerical semigroup with gcd 1, with membership tabulated up to its conductor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumSemigroup {
    gens: Vec<u64>,
    table: Vec<bool>,
    conductor: u64,
}

impl NumSemigroup {
    /// `gens` must be positive with gcd 1.
    pub fn new(gens: &[u64]) -> Result<Self, MonoidError> {
        let min = *gens.iter().min().expect("nonempty generators");
        let max = *gens.iter().max().expect("nonempty generators");
        // Schur: the Frobenius number is below min * max
        let bound = min.saturating_mul(max).saturating_add(1);
        if bound > MAX_TABLE {
            return Err(MonoidError::TooLarge(bound));
        }
        let n = bound as usize + 1;
        let mut table = vec![false; n];
        table[0] = true;
        for i in 1..n {
            table[i] = gens.iter().any(|&g| (g as usize) <= i && table[i - g as usize]);
        }
        let conductor = table.iter().rposition(|&b| !b).map(|i| i as u64 + 1).unwrap_or(0);
        table.truncate(conductor as usize);
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        Ok(NumSemigroup { gens, table, conductor })
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.table[n as usize]
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn min_positive(&self) -> u64 {
        (1..).find(|&n| self.contains(n)).expect("numerical semigroup has positive elements")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Trivial,
    /// `unit * S`.
    Discrete { unit: Rat, sg: NumSemigroup },
    /// `unit * Z[1/P]`, nonnegative part.
    Cone { unit: Rat, inverted: Vec<u64> },
    DyadicThirds,
}

/// A decidable submonoid of the nonnegative rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    desc: MonoidDesc,
    kind: Kind,
}

/// Search limits for window-based decisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchWindow {
    pub bound: Rat,
    pub denom_bound: u64,
}

impl SearchWindow {
    pub fn new(bound: Rat, denom_bound: u64) -> Self {
        SearchWindow { bound, denom_bound }
    }
}

fn scale_to_integers(gens: &[Rat]) -> Result<(Rat, Vec<u64>), MonoidError> {
    let mut l = BigInt::one();
    for g in gens {
        if !g.is_positive() {
            return Err(MonoidError::NonPositiveGenerator(g.to_string()));
        }
        l = l.lcm(g.denom());
    }
    let ints: Vec<BigInt> = gens.iter().map(|g| g.numer() * (&l / g.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let unit = Rat::new(g.clone(), l);
    let mut out = Vec::with_capacity(ints.len());
    for x in &ints {
        let v = (x / &g).to_u64().ok_or(MonoidError::TooLarge(u64::MAX))?;
        if v > MAX_TABLE {
            return Err(MonoidError::TooLarge(v));
        }
        out.push(v);
    }
    Ok((unit, out))
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - 1u32)).is_zero()
}

fn is_smooth(mut n: BigInt, primes: &[u64]) -> bool {
    for &p in primes {
        let p = BigInt::from(p);
        while (&n % &p).is_zero() {
            n /= &p;
        }
    }
    n.is_one()
}

impl Monoid {
    pub fn new(desc: MonoidDesc) -> Result<Self, MonoidError> {
        let kind = match &desc {
            MonoidDesc::FinGen { generators } if generators.is_empty() => Kind::Trivial,
            MonoidDesc::FinGen { generators } => {
                let (unit, ints) = scale_to_integers(generators)?;
                Kind::Discrete { unit, sg: NumSemigroup::new(&ints)? }
            }
            MonoidDesc::GroupCone { generators, .. } if generators.is_empty() => Kind::Trivial,
            MonoidDesc::GroupCone { generators, inverted } => {
                for &p in inverted {
                    if !is_prime(p) {
                        return Err(MonoidError::NotPrime(p));
                    }
                }
                let abs: Vec<Rat> = generators.iter().filter(|g| !g.is_zero()).map(|g| g.abs()).collect();
                if abs.is_empty() {
                    Kind::Trivial
                } else {
                    let (mut unit, _) = scale_to_integers(&abs)?;
                    // strip the invertible primes from the unit so it is canonical
                    let mut inv: Vec<u64> = inverted.clone();
                    inv.sort_unstable();
                    inv.dedup();
                    for &p in &inv {
                        let pb = BigInt::from(p);
                        while (unit.numer() % &pb).is_zero() {
                            unit /= Rat::from_integer(pb.clone());
                        }
                        while (unit.denom() % &pb).is_zero() {
                            unit *= Rat::from_integer(pb.clone());
                        }
                    }
                    Kind::Cone { unit, inverted: inv }
                }
            }
            MonoidDesc::Closure { id: ClosureId::OmegaMinusOne } => {
                Kind::Discrete { unit: Rat::one(), sg: NumSemigroup::new(&[2, 3])? }
            }
            MonoidDesc::Closure { id: ClosureId::DyadicThirds } => Kind::DyadicThirds,
        };
        Ok(Monoid { desc, kind })
    }

    pub fn named(name: &str) -> Result<Self, MonoidError> {
        Monoid::new(MonoidDesc::named(name)?)
    }

    pub fn fingen(gens: &[i64]) -> Self {
        Monoid::new(MonoidDesc::fingen(gens)).expect("valid integer generators")
    }

    pub fn desc(&self) -> &MonoidDesc {
        &self.desc
    }

    /// `inf (M \ {0}) > 0`.
    pub fn is_discrete(&self) -> bool {
        matches!(self.kind, Kind::Trivial | Kind::Discrete { .. })
            || matches!(&self.kind, Kind::Cone { inverted, .. } if inverted.is_empty())
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, Kind::Trivial)
    }

    /// Generator of `M - M` when that group is cyclic.
    pub fn unit(&self) -> Option<Rat> {
        match &self.kind {
            Kind::Discrete { unit, .. } => Some(unit.clone()),
            Kind::Cone { unit, inverted } if inverted.is_empty() => Some(unit.clone()),
            _ => None,
        }
    }

    /// Smallest value above which every element of `M - M` lies in `M`, when it exists.
    pub fn conductor(&self) -> Option<Rat> {
        match &self.kind {
            Kind::Trivial => Some(Rat::zero()),
            Kind::Discrete { unit, sg } => Some(unit * Rat::from_integer(sg.conductor().into())),
            Kind::Cone { .. } => Some(Rat::zero()),
            Kind::DyadicThirds => None,
        }
    }

    pub fn min_positive(&self) -> Option<Rat> {
        match &self.kind {
            Kind::Discrete { unit, sg } => Some(unit * Rat::from_integer(sg.min_positive().into())),
            Kind::Cone { unit, inverted } if inverted.is_empty() => Some(unit.clone()),
            _ => None,
        }
    }

    fn units_of(unit: &Rat, x: &Rat) -> Option<BigInt> {
        let k = x / unit;
        rat::is_integer(&k).then(|| k.to_integer())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        if x.is_negative() {
            return false;
        }
        if x.is_zero() {
            return true;
        }
        match &self.kind {
            Kind::Trivial => false,
            Kind::Discrete { unit, sg } => match Self::units_of(unit, x).and_then(|k| k.to_u64()) {
                Some(k) => sg.contains(k),
                None => false,
            },
            Kind::Cone { .. } => self.in_difference_group(x),
            Kind::DyadicThirds => {
                if is_power_of_two(x.denom()) {
                    return true;
                }
                match Self::third_class(x) {
                    Some(j) => *x > rat::frac(j, 3),
                    None => false,
                }
            }
        }
    }

    /// For a rational `x` with denominator `3 * 2^k`, the `j` in `{1, 2}` with `x - j/3` dyadic.
    fn third_class(x: &Rat) -> Option<i64> {
        (1..=2).find(|&j| is_power_of_two((x - rat::frac(j, 3)).denom()))
    }

    pub fn in_difference_group(&self, x: &Rat) -> bool {
        if x.is_zero() {
            return true;
        }
        match &self.kind {
            Kind::Trivial => false,
            Kind::Discrete { unit, .. } => Self::units_of(unit, x).is_some(),
            Kind::Cone { unit, inverted } => {
                let k = x / unit;
                is_smooth(k.denom().clone(), inverted)
            }
            Kind::DyadicThirds => {
                let d = x.denom();
                is_power_of_two(d) || (d % 3u32 == BigInt::zero() && is_power_of_two(&(d / 3u32)))
            }
        }
    }

    /// `inf { a in M : a + d in M }` for `d` in `M - M`, `d >= 0`; `None` when the set is empty.
    pub fn companion_inf(&self, d: &Rat) -> Option<Rat> {
        if d.is_negative() || !self.in_difference_group(d) {
            return None;
        }
        if self.contains(d) {
            return Some(Rat::zero());
        }
        match &self.kind {
            Kind::Trivial | Kind::Cone { .. } => None,
            Kind::Discrete { unit, sg } => {
                let s = Self::units_of(unit, d)?.to_u64()?;
                // a = conductor always works, so the scan terminates
                let a = (0..=sg.conductor()).find(|&a| sg.contains(a) && sg.contains(a + s))?;
                Some(unit * Rat::from_integer(a.into()))
            }
            Kind::DyadicThirds => {
                let j = Self::third_class(d)?;
                let direct = rat::frac(j, 3) - d;
                let wrap = rat::frac(3 - j, 3);
                Some(if direct < wrap { direct } else { wrap })
            }
        }
    }

    /// Like `companion_inf` but over strictly positive `a`.
    pub fn positive_companion_inf(&self, d: &Rat) -> Option<Rat> {
        if d.is_negative() || !self.in_difference_group(d) {
            return None;
        }
        match &self.kind {
            Kind::Discrete { unit, sg } => {
                let s = Self::units_of(unit, d)?.to_u64()?;
                let a = (1..=sg.conductor().max(1) + sg.min_positive())
                    .find(|&a| sg.contains(a) && sg.contains(a + s))?;
                Some(unit * Rat::from_integer(a.into()))
            }
            Kind::Trivial => None,
            _ => {
                if self.contains(d) {
                    Some(Rat::zero())
                } else {
                    self.companion_inf(d)
                }
            }
        }
    }

    /// `inf { u + v : u, v in M, u - v = d }` for `d >= 0` in `M - M`.
    pub fn difference_cost(&self, d: &Rat) -> Option<Rat> {
        self.companion_inf(d).map(|a| d + a * rat::int(2))
    }

    /// Elements of `(M - M) ∩ [0, bound]`, ordered by denominator and then value.
    pub fn difference_candidates(&self, w: &SearchWindow) -> Vec<Rat> {
        let bound = &w.bound;
        if bound.is_negative() {
            return vec![];
        }
        let mut denoms: Vec<BigInt> = Vec::new();
        let step_unit: Rat;
        match &self.kind {
            Kind::Trivial => return vec![Rat::zero()],
            Kind::Discrete { unit, .. } => {
                step_unit = unit.clone();
                denoms.push(BigInt::one());
            }
            Kind::Cone { unit, inverted } => {
                step_unit = unit.clone();
                let mut ds = BTreeSet::new();
                ds.insert(1u64);
                let mut frontier = vec![1u64];
                while let Some(d) = frontier.pop() {
                    for &p in inverted {
                        if let Some(n) = d.checked_mul(p) {
                            if n <= w.denom_bound.max(1) && ds.insert(n) {
                                frontier.push(n);
                            }
                        }
                    }
                }
                denoms.extend(ds.into_iter().map(BigInt::from));
            }
            Kind::DyadicThirds => {
                step_unit = Rat::one();
                let mut d = 1u64;
                let mut ds = BTreeSet::new();
                while d <= w.denom_bound.max(1) {
                    ds.insert(d);
                    if 3 * d <= w.denom_bound {
                        ds.insert(3 * d);
                    }
                    d *= 2;
                }
                denoms.extend(ds.into_iter().map(BigInt::from));
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for den in denoms {
            let step = &step_unit / Rat::from_integer(den);
            let count = (bound / &step).floor().to_integer();
            let mut k = BigInt::zero();
            while k <= count {
                let v = &step * Rat::from_integer(k.clone());
                if seen.insert(v.clone()) {
                    out.push(v);
                }
                k += 1u32;
            }
        }
        out.sort_by(|a, b| a.denom().cmp(b.denom()).then(a.cmp(b)));
        out
    }

    /// Elements of `M ∩ [0, bound]` in increasing order.
    pub fn elements(&self, w: &SearchWindow) -> Vec<Rat> {
        let mut v: Vec<Rat> = self.difference_candidates(w).into_iter().filter(|x| self.contains(x)).collect();
        v.sort();
        v
    }

    /// Whether two descriptions define the same set after multiplying `other` by `factor`.
    pub fn same_set_scaled(&self, other: &Monoid, factor: &Rat) -> bool {
        match (&self.kind, &other.kind) {
            (Kind::Trivial, Kind::Trivial) => true,
            (Kind::Discrete { unit: u1, sg: s1 }, Kind::Discrete { unit: u2, sg: s2 }) => {
                *u1 == u2 * factor && s1.generators().iter().all(|&g| s2.contains(g))
                    && s2.generators().iter().all(|&g| s1.contains(g))
            }
            (Kind::Cone { unit: u1, inverted: i1 }, Kind::Cone { unit: u2, inverted: i2 }) => {
                i1 == i2 && self.in_difference_group(&(u2 * factor)) && other.in_difference_group(&(u1 / factor))
            }
            (Kind::DyadicThirds, Kind::DyadicThirds) => factor.is_one(),
            _ => false,
        }
    }
}

/// Largest divisor of `x` not divisible by the prime `p`.
pub fn delta_p(x: u64, p: u64) -> Result<u64, MonoidError> {
    if !is_prime(p) {
        return Err(MonoidError::NotPrime(p));
    }
    if x == 0 {
        return Err(MonoidError::DeltaOfZero);
    }
    let mut x = x;
    while x % p == 0 {
        x /= p;
    }
    Ok(x)
}

/// The unique `k` in `1..p` with `k * y ≡ x (mod p)`.
pub fn div_p(x: i64, y: i64, p: u64) -> Result<u64, MonoidError> {
    if !is_prime(p) {
        return Err(MonoidError::NotPrime(p));
    }
    let pi = p as i128;
    let xm = (x as i128).rem_euclid(pi);
    let ym = (y as i128).rem_euclid(pi);
    if xm == 0 || ym == 0 {
        return Err(MonoidError::Contract(format!("{p} divides an argument of div_p({x}, {y})")));
    }
    let inv = (ym as i64).extended_gcd(&(pi as i64)).x as i128;
    Ok((xm * inv).rem_euclid(pi) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DzikTrace {
    pub value: u64,
    pub trace: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DzikError {
    #[error("trace element {0} is not in the monoid")]
    NotMember(u64),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// Runs the recursion `a_{k+1} = min`, `b_{k+1} = delta_p(y + ((-y) div_p x) * x)` until the
/// pair becomes constant. Every trace element is checked against `member`.
pub fn dzik_reduce(a: u64, b: u64, p: u64, member: impl Fn(u64) -> bool) -> Result<DzikTrace, DzikError> {
    if a == 0 || b == 0 {
        return Err(MonoidError::DeltaOfZero.into());
    }
    for v in [a, b] {
        if !member(v) {
            return Err(DzikError::NotMember(v));
        }
    }
    if !is_prime(p) {
        return Err(MonoidError::NotPrime(p).into());
    }
    let strip = |mut x: u64| {
        while x % p == 0 {
            x /= p;
        }
        x
    };
    let (mut ak, mut bk) = (strip(a), strip(b));
    let mut trace = Vec::with_capacity(16);
    trace.push((ak, bk));
    loop {
        for v in [ak, bk] {
            if !member(v) {
                return Err(DzikError::NotMember(v));
            }
        }
        if ak == bk {
            return Ok(DzikTrace { value: ak, trace });
        }
        let (x, y) = (ak.min(bk), ak.max(bk));
        // k = -y / x mod p, both coprime to p
        let (xm, ym) = (x % p, y % p);
        let k = (1..p).find(|k| (k * xm + ym) % p == 0).expect("p is prime and p does not divide x");
        ak = x;
        bk = strip(y + k * x);
        trace.push((ak, bk));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    ZPlus,
    MMinusM,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisibilityWitness {
    Divisible,
    /// `p*m ∈ M`, `m` in the domain, `m ∉ M`.
    Counterexample(Rat),
    Inconclusive(String),
}

fn scan_divisibility(m: &Monoid, p: u64, cands: &[Rat]) -> Option<Rat> {
    let pr = rat::int(p as i64);
    cands.iter().filter(|s| s.is_positive()).find(|s| m.contains(&(*s * &pr)) && !m.contains(s)).cloned()
}

/// Is `M` `p`-divisible in the chosen domain: `p*s ∈ M` implies `s ∈ M`.
pub fn is_p_divisible_in(m: &Monoid, p: u64, domain: Domain, w: &SearchWindow) -> Result<DivisibilityWitness, MonoidError> {
    if !is_prime(p) {
        return Err(MonoidError::NotPrime(p));
    }
    let cands: Vec<Rat> = match domain {
        Domain::MMinusM => m.difference_candidates(w),
        Domain::ZPlus => {
            let top = w.bound.floor().to_integer().to_u64().unwrap_or(0);
            (0..=top).map(|k| rat::int(k as i64)).collect()
        }
    };
    if let Some(s) = scan_divisibility(m, p, &cands) {
        return Ok(DivisibilityWitness::Counterexample(s));
    }
    let complete = match (&m.kind, domain) {
        (Kind::Trivial, _) => true,
        (Kind::Cone { .. }, Domain::MMinusM) => true,
        (Kind::Cone { unit, inverted }, Domain::ZPlus) => {
            inverted.contains(&p) || w.bound >= Rat::from_integer(unit.numer().abs() * BigInt::from(p))
        }
        (Kind::Discrete { .. }, Domain::MMinusM) => w.bound >= m.conductor().expect("discrete"),
        (Kind::Discrete { unit, .. }, Domain::ZPlus) => {
            w.bound >= m.conductor().expect("discrete") + Rat::from_integer(unit.numer().clone())
        }
        (Kind::DyadicThirds, _) => false,
    };
    Ok(if complete {
        DivisibilityWitness::Divisible
    } else {
        DivisibilityWitness::Inconclusive(format!(
            "no counterexample up to {} with denominators <= {}, search not complete",
            w.bound, w.denom_bound
        ))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HalfGroupVerdict {
    HalfGroup,
    /// `gap = b - a` lies in `(M - M)+ \ M`, and `2*gap ∈ M`.
    NotHalfGroup { a: Option<Rat>, b: Option<Rat>, gap: Rat },
    Inconclusive(String),
}

/// Decides whether `±M` is a group, using 2-divisibility of `M` in `M - M`.
pub fn is_half_group(m: &Monoid, w: &SearchWindow) -> Result<HalfGroupVerdict, MonoidError> {
    match &m.kind {
        Kind::Trivial | Kind::Cone { .. } => return Ok(HalfGroupVerdict::HalfGroup),
        _ => {}
    }
    Ok(match is_p_divisible_in(m, 2, Domain::MMinusM, w)? {
        DivisibilityWitness::Divisible => HalfGroupVerdict::HalfGroup,
        DivisibilityWitness::Counterexample(gap) => {
            let a = m.companion_inf(&gap).filter(|a| m.contains(&(a + &gap)) && m.contains(a));
            let b = a.as_ref().map(|a| a + &gap);
            HalfGroupVerdict::NotHalfGroup { a, b, gap }
        }
        DivisibilityWitness::Inconclusive(why) => HalfGroupVerdict::Inconclusive(why),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FloppyReason {
    /// `inf (M \ {0}) > 0`.
    DiscreteInfimum,
    /// `(M - M)+ ⊆ M`, so there is nothing to check.
    HalfGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FloppyVerdict {
    Floppy(FloppyReason),
    /// `r ∉ M` yet `r = inf { a + b : b - a = r }`.
    NonFloppy { r: Rat },
    Inconclusive(String),
}

pub fn is_floppy(m: &Monoid, w: &SearchWindow) -> FloppyVerdict {
    match &m.kind {
        Kind::Trivial | Kind::Discrete { .. } => FloppyVerdict::Floppy(FloppyReason::DiscreteInfimum),
        Kind::Cone { inverted, .. } if inverted.is_empty() => FloppyVerdict::Floppy(FloppyReason::DiscreteInfimum),
        Kind::Cone { .. } => FloppyVerdict::Floppy(FloppyReason::HalfGroup),
        Kind::DyadicThirds => {
            for r in m.difference_candidates(w) {
                if r.is_positive() && !m.contains(&r) && m.companion_inf(&r).is_some_and(|a| a.is_zero()) {
                    return FloppyVerdict::NonFloppy { r };
                }
            }
            FloppyVerdict::Inconclusive(format!(
                "no witness up to {} with denominators <= {}",
                w.bound, w.denom_bound
            ))
        }
    }
}

/// Elements `r ∈ M \ {0}`, `r <= bound`, that are not a sum of two nonzero elements of `M`.
pub fn ddot_set(m: &Monoid, w: &SearchWindow) -> Vec<Rat> {
    match &m.kind {
        Kind::Trivial => vec![],
        Kind::Discrete { unit, sg } => {
            let top = (&w.bound / unit).floor().to_integer().to_u64().unwrap_or(0);
            (1..=top)
                .filter(|&r| sg.contains(r) && !(1..r).any(|x| sg.contains(x) && sg.contains(r - x)))
                .map(|r| unit * Rat::from_integer(r.into()))
                .collect()
        }
        Kind::Cone { unit, inverted } if inverted.is_empty() => {
            if *unit <= w.bound {
                vec![unit.clone()]
            } else {
                vec![]
            }
        }
        // dense classes: every r splits, e.g. as r/p + (p-1)r/p or by halving the dyadic tail
        Kind::Cone { .. } | Kind::DyadicThirds => vec![],
    }
}
