//! Symbolic Banakh groups over formal independent coordinates `e_0, e_1, ...`. Norms of two
//! elements agree exactly when the elements agree up to sign, so a distance is represented by
//! the sign class of a difference vector.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::rat::{is_integer, parse_rat, rat_sqrt, Rat};
use crate::space::{Distance, SphereOracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("scaling by {0} leaves the integer lattice")]
    NonIntegral(String),
    #[error("malformed group element `{0}`")]
    Parse(String),
}

/// Integer (`H`) or rational (`L`) coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    H,
    L,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElement {
    coeffs: BTreeMap<u32, Rat>,
}

impl GroupElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: u32) -> Self {
        Self::from_coeffs([(i, Rat::one())])
    }

    pub fn from_coeffs(it: impl IntoIterator<Item = (u32, Rat)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, c) in it {
            *coeffs.entry(i).or_insert_with(Rat::zero) += c;
        }
        coeffs.retain(|_, c: &mut Rat| !c.is_zero());
        GroupElement { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Rat> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_coeffs(self.coeffs.iter().chain(o.coeffs.iter()).map(|(i, c)| (*i, c.clone())))
    }

    pub fn neg(&self) -> Self {
        GroupElement { coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// `q x`; in `H` only integer `q` is allowed.
    pub fn scale(&self, q: &Rat, lattice: Lattice) -> Result<Self, GroupError> {
        if lattice == Lattice::H && !is_integer(q) {
            return Err(GroupError::NonIntegral(q.to_string()));
        }
        Ok(self.scale_unchecked(q))
    }

    fn scale_unchecked(&self, q: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(i, c)| (*i, c * q)))
    }

    pub fn in_lattice(&self, lattice: Lattice) -> bool {
        lattice == Lattice::L || self.coeffs.values().all(is_integer)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.coeffs.iter().enumerate() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupElement {
    type Err = GroupError;

    /// Compact sums such as `2e0+3e5`, `-e1`, `1/2e3 - e4`, `0`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if t == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = t.as_bytes();
        for k in 1..=bytes.len() {
            if k == bytes.len() || bytes[k] == b'+' || bytes[k] == b'-' {
                terms.push(&t[start..k]);
                start = k;
            }
        }
        let mut out = Vec::new();
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-Rat::one(), &term[1..]),
                b'+' => (Rat::one(), &term[1..]),
                _ => (Rat::one(), term),
            };
            let (c, idx) = body.rsplit_once('e').ok_or_else(bad)?;
            let idx: u32 = idx.parse().map_err(|_| bad())?;
            let c = if c.is_empty() { Rat::one() } else { parse_rat(c).map_err(|_| bad())? };
            out.push((idx, c * sign));
        }
        Ok(Self::from_coeffs(out))
    }
}

/// The norm of a vector, held as its sign class: the first nonzero coefficient is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DistToken(GroupElement);

impl DistToken {
    pub fn of(v: &GroupElement) -> Self {
        match v.coeffs.values().next() {
            Some(c) if c.is_negative() => DistToken(v.neg()),
            _ => DistToken(v.clone()),
        }
    }

    pub fn rep(&self) -> &GroupElement {
        &self.0
    }
}

impl fmt::Display for DistToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}|", self.0)
    }
}

/// `Some(q)` with `x = q y` over the rationals.
fn proportion(x: &GroupElement, y: &GroupElement) -> Option<Rat> {
    let (i, c) = y.coeffs.iter().next()?;
    let q = x.coeffs.get(i).map(|a| a / c).unwrap_or_else(Rat::zero);
    (y.scale_unchecked(&q) == *x).then_some(q)
}

impl Distance for DistToken {
    fn zero() -> Self {
        DistToken::default()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn ratio_to(&self, other: &Self) -> Option<Rat> {
        ratio_in_q(self, other)
    }

    fn scaled(&self, q: &Rat) -> Self {
        DistToken::of(&self.0.scale_unchecked(q))
    }

    fn try_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        let q = proportion(&other.0, &self.0)?;
        Some(self.scaled(&(Rat::one() + q.abs())))
    }
}

pub fn norm_equal(x: &GroupElement, y: &GroupElement) -> bool {
    DistToken::of(x) == DistToken::of(y)
}

pub fn dist_token(x: &GroupElement, y: &GroupElement) -> DistToken {
    DistToken::of(&x.sub(y))
}

/// `q > 0` with `|s| = q |t|`, or 1 for two zero tokens.
pub fn ratio_in_q(s: &DistToken, t: &DistToken) -> Option<Rat> {
    if t.is_zero() {
        return s.is_zero().then(Rat::one);
    }
    proportion(&s.0, &t.0).map(|q| q.abs())
}

/// Square norm `(sum f(a) r(a))^2 + sum_{a != 0} f(a)^2` with `r(0) = 1`; the first part is kept
/// as a formal coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormSq {
    pub linear: GroupElement,
    pub tail: Rat,
}

pub fn normsq(x: &GroupElement) -> NormSq {
    let tail = x.coeffs.iter().filter(|(i, _)| **i != 0).map(|(_, c)| c * c).fold(Rat::zero(), |a, b| a + b);
    NormSq { linear: x.clone(), tail }
}

/// Structural proof of `||x|| >= 1`: the tail alone reaches 1, or `x = c e_0` with `|c| >= 1`.
/// Every nonzero element of `H` qualifies.
pub fn certify_norm_at_least_one(x: &GroupElement) -> bool {
    if normsq(x).tail >= Rat::one() {
        return true;
    }
    match (x.coeffs.len(), x.coeffs.get(&0)) {
        (1, Some(c)) => c.abs() >= Rat::one(),
        _ => false,
    }
}

pub fn sphere(c: &GroupElement, t: &DistToken) -> Vec<GroupElement> {
    if t.is_zero() {
        return vec![c.clone()];
    }
    vec![c.add(&t.0), c.sub(&t.0)]
}

pub fn is_p_divisible_elem(x: &GroupElement, p: u64, lattice: Lattice) -> bool {
    match lattice {
        Lattice::L => true,
        Lattice::H => x.coeffs.values().all(|c| {
            let n = c.numer().clone();
            (n % num_bigint::BigInt::from(p)).is_zero()
        }),
    }
}

/// The coordinate weight `r(a)` in `(1, 2)` for `a != 0`, fixed by `(seed, a)`.
pub fn sampled_weight(seed: u64, index: u32) -> f64 {
    if index == 0 {
        return 1.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(index)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    loop {
        let r: f64 = rng.gen_range(1.0..2.0);
        if r > 1.0 {
            return r;
        }
    }
}

pub fn numeric_norm_with(x: &GroupElement, weight: impl Fn(u32) -> f64) -> f64 {
    let mut lin = 0.0;
    let mut tail = 0.0;
    for (i, c) in &x.coeffs {
        let c = c.to_f64().unwrap_or(f64::NAN);
        lin += c * weight(*i);
        if *i != 0 {
            tail += c * c;
        }
    }
    (lin * lin + tail).sqrt()
}

/// Display-only numeric norm with sampled coordinate weights.
pub fn numeric_norm(x: &GroupElement, seed: u64) -> f64 {
    numeric_norm_with(x, |i| sampled_weight(seed, i))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormSolutions {
    Infinite,
    Finite(Vec<Rat>),
}

/// Rational solutions `t` of `(a1 t + a2)^2 + a3^2 = (b1 t + b2)^2 + b3^2`.
pub fn solve_norm_equation(a1: &Rat, a2: &Rat, a3: &Rat, b1: &Rat, b2: &Rat, b3: &Rat) -> NormSolutions {
    let two = Rat::from_integer(2.into());
    let qa = a1 * a1 - b1 * b1;
    let qb = (a1 * a2 - b1 * b2) * &two;
    let qc = a2 * a2 + a3 * a3 - b2 * b2 - b3 * b3;
    if qa.is_zero() && qb.is_zero() {
        return if qc.is_zero() { NormSolutions::Infinite } else { NormSolutions::Finite(vec![]) };
    }
    if qa.is_zero() {
        return NormSolutions::Finite(vec![-qc / qb]);
    }
    let disc = &qb * &qb - Rat::from_integer(4.into()) * &qa * &qc;
    if disc.is_negative() {
        return NormSolutions::Finite(vec![]);
    }
    let Some(s) = rat_sqrt(&disc) else {
        return NormSolutions::Finite(vec![]);
    };
    let den = &qa * &two;
    let mut v = vec![(-&qb - &s) / &den, (-&qb + &s) / &den];
    v.sort();
    v.dedup();
    NormSolutions::Finite(v)
}

/// Sphere oracle of `H` or `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupOracle {
    pub lattice: Lattice,
}

impl SphereOracle for GroupOracle {
    type Point = GroupElement;
    type Dist = DistToken;

    fn dist(&self, x: &GroupElement, y: &GroupElement) -> DistToken {
        dist_token(x, y)
    }

    fn sphere(&self, c: &GroupElement, r: &DistToken) -> Vec<GroupElement> {
        if !c.in_lattice(self.lattice) || !r.0.in_lattice(self.lattice) {
            return vec![];
        }
        sphere(c, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};
    use crate::space::{directed_point, discrete_line, segment_construct, split_segment};

    fn g(s: &str) -> GroupElement {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic() {
        assert!(g("e1").add(&g("e1").neg()).is_zero());
        assert_eq!(g("e0").scale(&int(3), Lattice::H).unwrap().coeffs()[&0], int(3));
        assert_eq!(g("e1").add(&g("e2")).coeffs().keys().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert!(g("e1").scale(&frac(1, 2), Lattice::H).is_err());
        for s in ["2e0+3e5", "-e1", "1/2e3-e4", "0"] {
            assert_eq!(g(s).to_string().parse::<GroupElement>().unwrap(), g(s));
        }
        assert_eq!(g("2e0+3e5").to_string(), "2e0+3e5");
    }

    #[test]
    fn norms() {
        assert!(norm_equal(&g("e1+e2"), &g("-e1-e2")));
        assert!(!norm_equal(&g("e1"), &g("e2")));
        assert!(norm_equal(&g("0"), &g("0")));
        assert_eq!(normsq(&g("e0")), NormSq { linear: g("e0"), tail: int(0) });
        assert_eq!(normsq(&g("e1")).tail, int(1));
        assert_eq!(normsq(&g("2e0+3e5")).tail, int(9));
        assert!(certify_norm_at_least_one(&g("-e0")) && certify_norm_at_least_one(&g("e0+e7")));
        assert!(!certify_norm_at_least_one(&g("1/2e3")) && !certify_norm_at_least_one(&g("0")));
        assert_eq!(numeric_norm(&g("e0"), 5), 1.0);
        assert_eq!(numeric_norm(&g("0"), 5), 0.0);
        let v = numeric_norm_with(&g("e1"), |i| if i == 1 { 1.5 } else { 1.0 });
        assert!((v - 1.8028).abs() < 1e-4);
        let w = sampled_weight(9, 4);
        assert!(w > 1.0 && w < 2.0 && w == sampled_weight(9, 4));
    }

    #[test]
    fn spheres_and_tokens() {
        assert_eq!(sphere(&g("0"), &DistToken::of(&g("e0"))), vec![g("e0"), g("-e0")]);
        assert_eq!(sphere(&g("e1"), &DistToken::zero()), vec![g("e1")]);
        let s = sphere(&g("e1"), &DistToken::of(&g("e2-e1")));
        assert!(s.contains(&g("e2")) && s.contains(&g("2e1-e2")));
        assert_eq!(ratio_in_q(&DistToken::of(&g("2e0")), &DistToken::of(&g("e0"))), Some(int(2)));
        assert_eq!(ratio_in_q(&DistToken::of(&g("e1")), &DistToken::of(&g("e2"))), None);
        assert_eq!(ratio_in_q(&DistToken::zero(), &DistToken::zero()), Some(int(1)));
    }

    #[test]
    fn divisibility() {
        assert!(is_p_divisible_elem(&g("2e1+4e2"), 2, Lattice::H));
        assert!(!is_p_divisible_elem(&g("e1"), 2, Lattice::H));
        assert!(is_p_divisible_elem(&g("e1"), 7, Lattice::L));
    }

    #[test]
    fn norm_equation() {
        let (z, o, t) = (int(0), int(1), int(2));
        assert_eq!(solve_norm_equation(&o, &z, &z, &z, &o, &z), NormSolutions::Finite(vec![int(-1), int(1)]));
        assert_eq!(solve_norm_equation(&o, &z, &z, &o, &z, &z), NormSolutions::Infinite);
        assert_eq!(solve_norm_equation(&z, &o, &z, &z, &t, &z), NormSolutions::Finite(vec![]));
    }

    #[test]
    fn geometry_on_the_group() {
        let o = GroupOracle { lattice: Lattice::H };
        let line = discrete_line(&o, &g("0"), &g("e0"), 5).unwrap();
        for (k, p) in line.iter().enumerate() {
            assert_eq!(*p, g("e0").scale(&int(k as i64 - 5), Lattice::H).unwrap());
        }
        assert_eq!(segment_construct(&o, &g("0"), &g("e0"), &DistToken::of(&g("2e0"))).unwrap(), g("3e0"));
        let two = DistToken::of(&g("2e0"));
        assert_eq!(split_segment(&o, &g("0"), &g("4e0"), &two, &two).unwrap(), g("2e0"));
        assert_eq!(directed_point(&o, &g("0"), &g("2e0"), &DistToken::of(&g("5e0"))).unwrap(), g("5e0"));
    }
}
