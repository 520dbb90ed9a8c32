//! Exact numbers of the form `q0 + q1*sqrt(p1) + ... + qk*sqrt(pk)` with distinct primes `pi`.
//!
//! The square roots of distinct primes together with 1 are linearly independent over the
//! rationals, so equality is componentwise and a formally nonzero value has a sign that a
//! fine enough interval evaluation always certifies.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{self, is_prime, parse_rat, Rat};

/// Relative error budget used when trusting the cached float approximation.
const FLOAT_SLACK: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurdError {
    #[error("surd key {0} is not a prime")]
    NotPrime(u64),
    #[error("malformed surd `{0}`")]
    Malformed(String),
}

#[derive(Clone)]
pub struct Surd {
    rat: Rat,
    terms: BTreeMap<u64, Rat>,
    approx: f64,
    mag: f64,
}

impl Surd {
    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn from_rat(q: Rat) -> Self {
        Self::build(q, BTreeMap::new())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat::int(n))
    }

    /// `coeff * sqrt(p)`.
    pub fn sqrt_prime(p: u64, coeff: Rat) -> Result<Self, SurdError> {
        Self::new(Rat::zero(), [(p, coeff)])
    }

    pub fn new(q0: Rat, terms: impl IntoIterator<Item = (u64, Rat)>) -> Result<Self, SurdError> {
        let mut map: BTreeMap<u64, Rat> = BTreeMap::new();
        for (p, c) in terms {
            if !is_prime(p) {
                return Err(SurdError::NotPrime(p));
            }
            *map.entry(p).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self::build(q0, map))
    }

    fn build(rat: Rat, terms: BTreeMap<u64, Rat>) -> Self {
        let mut approx = rat::to_f64(&rat);
        let mut mag = approx.abs();
        for (p, c) in &terms {
            let t = rat::to_f64(c) * (*p as f64).sqrt();
            approx += t;
            mag += t.abs();
        }
        Surd { rat, terms, approx, mag }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rat
    }

    pub fn terms(&self) -> &BTreeMap<u64, Rat> {
        &self.terms
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.terms.is_empty()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.terms.is_empty() {
            Some(&self.rat)
        } else {
            None
        }
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    /// Guaranteed enclosure of the value in floating point.
    pub fn float_bounds(&self) -> (f64, f64) {
        if !self.approx.is_finite() || !self.mag.is_finite() {
            return (f64::NEG_INFINITY, f64::INFINITY);
        }
        if self.terms.is_empty() && self.rat.is_zero() {
            return (0.0, 0.0);
        }
        let e = self.mag * FLOAT_SLACK + 1e-300;
        (self.approx - e, self.approx + e)
    }

    pub fn scale(&self, q: &Rat) -> Surd {
        if q.is_zero() {
            return Surd::zero();
        }
        let terms = self.terms.iter().map(|(p, c)| (*p, c * q)).collect();
        Self::build(&self.rat * q, terms)
    }

    fn combine(&self, other: &Surd, sign: bool) -> Surd {
        let rat = if sign { &self.rat + &other.rat } else { &self.rat - &other.rat };
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            let e = terms.entry(*p).or_insert_with(Rat::zero);
            if sign {
                *e += c;
            } else {
                *e -= c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self::build(rat, terms)
    }

    /// Sign of the value, certified.
    pub fn signum(&self) -> Ordering {
        let (lo, hi) = self.float_bounds();
        if lo > 0.0 {
            return Ordering::Greater;
        }
        if hi < 0.0 {
            return Ordering::Less;
        }
        self.exact_sign()
    }

    fn integer_form(&self) -> (BigInt, BigInt, Vec<(BigInt, u64)>) {
        let mut den = self.rat.denom().clone();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let scale = |q: &Rat| q.numer() * (&den / q.denom());
        let r0 = scale(&self.rat);
        let ns = self.terms.iter().map(|(p, c)| (scale(c), *p)).collect();
        (den, r0, ns)
    }

    /// Integer bounds `lo <= value * den * 2^bits <= hi`.
    fn scaled_bounds(r0: &BigInt, ns: &[(BigInt, u64)], bits: usize) -> (BigInt, BigInt) {
        let mut lo = r0 << bits;
        let mut hi = lo.clone();
        for (n, p) in ns {
            let s = BigInt::from((BigUint::from(*p) << (2 * bits)).sqrt());
            let s1 = &s + 1u32;
            if n.is_positive() {
                lo += n * &s;
                hi += n * &s1;
            } else {
                lo += n * &s1;
                hi += n * &s;
            }
        }
        (lo, hi)
    }

    fn exact_sign(&self) -> Ordering {
        if self.terms.is_empty() {
            return self.rat.cmp(&Rat::zero());
        }
        let (_, r0, ns) = self.integer_form();
        let mut bits = 64usize;
        loop {
            let (lo, hi) = Self::scaled_bounds(&r0, &ns, bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            // a formally nonzero value is never zero, so refinement terminates
            bits *= 2;
            assert!(bits <= 1 << 22, "sign refinement did not converge");
        }
    }

    /// Rational enclosure `[lo, hi]` of width at most about `2^-bits` times the coefficient scale.
    pub fn interval(&self, bits: usize) -> (Rat, Rat) {
        if self.terms.is_empty() {
            return (self.rat.clone(), self.rat.clone());
        }
        let (den, r0, ns) = self.integer_form();
        let (lo, hi) = Self::scaled_bounds(&r0, &ns, bits);
        let d = den << bits;
        (Rat::new(lo, d.clone()), Rat::new(hi, d))
    }

    /// `Some(q)` with `self = q * other` when the two are rationally proportional.
    /// Two zeros have ratio 1 by convention.
    pub fn ratio_to(&self, other: &Surd) -> Option<Rat> {
        if other.is_zero() {
            return if self.is_zero() { Some(Rat::one()) } else { None };
        }
        let q = if !other.rat.is_zero() {
            &self.rat / &other.rat
        } else {
            let (p, c) = other.terms.iter().next().expect("nonzero surd has a term");
            self.terms.get(p).map(|s| s / c).unwrap_or_else(Rat::zero)
        };
        if other.scale(&q) == *self {
            Some(q)
        } else {
            None
        }
    }

    pub fn abs(&self) -> Surd {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Parses `3/2`, `sqrt(5)`, `2*sqrt(3) - 1/4`, and similar sums.
    pub fn parse(text: &str) -> Result<Surd, SurdError> {
        let bad = || SurdError::Malformed(text.to_string());
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0i32;
        for (i, ch) in cleaned.chars().enumerate() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 && i > 0 && !cur.ends_with('*') && !cur.ends_with('/') => {
                    pieces.push((neg, std::mem::take(&mut cur)));
                    neg = ch == '-';
                }
                '-' if i == 0 => neg = true,
                _ => cur.push(ch),
            }
        }
        pieces.push((neg, cur));
        let mut q0 = Rat::zero();
        let mut terms = Vec::new();
        for (neg, piece) in pieces {
            if piece.is_empty() {
                return Err(bad());
            }
            let sign = if neg { -Rat::one() } else { Rat::one() };
            if let Some(pos) = piece.find("sqrt(") {
                if !piece.ends_with(')') {
                    return Err(bad());
                }
                let coeff = if pos == 0 {
                    Rat::one()
                } else {
                    let c = piece[..pos].strip_suffix('*').ok_or_else(bad)?;
                    parse_rat(c).map_err(|_| bad())?
                };
                let p: u64 = piece[pos + 5..piece.len() - 1].parse().map_err(|_| bad())?;
                terms.push((p, coeff * sign));
            } else {
                q0 += parse_rat(&piece).map_err(|_| bad())? * sign;
            }
        }
        Surd::new(q0, terms)
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat && self.terms == other.terms
    }
}

impl Eq for Surd {}

impl Hash for Surd {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rat.hash(state);
        self.terms.hash(state);
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (alo, ahi) = self.float_bounds();
        let (blo, bhi) = other.float_bounds();
        if ahi < blo {
            return Ordering::Less;
        }
        if alo > bhi {
            return Ordering::Greater;
        }
        (self - other).exact_sign()
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        self.combine(rhs, true)
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self.combine(rhs, false)
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        self.combine(&rhs, true)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self.combine(&rhs, false)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        self.scale(&-Rat::one())
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl From<Rat> for Surd {
    fn from(q: Rat) -> Self {
        Surd::from_rat(q)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.rat.is_zero() || self.terms.is_empty() {
            write!(f, "{}", self.rat)?;
            first = false;
        }
        for (p, c) in &self.terms {
            let (neg, a) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if a.is_one() {
                write!(f, "sqrt({p})")?;
            } else {
                write!(f, "{a}*sqrt({p})")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn s(text: &str) -> Surd {
        Surd::parse(text).unwrap()
    }

    #[test]
    fn parse_display_round_trip() {
        for t in ["3/2", "sqrt(5)", "1 - 2*sqrt(3)", "-sqrt(2) + 1/7*sqrt(11)", "0"] {
            let v = s(t);
            assert_eq!(s(&v.to_string()), v, "{t}");
        }
        assert!(Surd::parse("sqrt(4)").is_err());
        assert!(Surd::parse("2*").is_err());
    }

    #[test]
    fn sign_of_near_cancellation() {
        // 1393/985 is a continued-fraction convergent of sqrt(2)
        let v = s("sqrt(2) - 3363/2378");
        assert_eq!(v.signum(), Ordering::Less);
        assert_eq!(s("sqrt(2) - 1393/985").signum(), Ordering::Greater);
        let w = s("sqrt(2) - 3363/2378") + s("1/1000000");
        assert_eq!(w.signum(), Ordering::Greater);
        // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6 < 10
        assert!(s("sqrt(2) + sqrt(3)") < s("3162/1000"));
        assert!(s("sqrt(2) + sqrt(3)") > s("3146/1000"));
    }

    #[test]
    fn exact_sign_matches_filter() {
        let v = s("3 - sqrt(7)");
        assert_eq!(v.exact_sign(), Ordering::Greater);
        assert_eq!(v.signum(), Ordering::Greater);
    }

    #[test]
    fn ratio_detection() {
        let a = s("2 + 4*sqrt(3)");
        let b = s("1 + 2*sqrt(3)");
        assert_eq!(a.ratio_to(&b), Some(int(2)));
        assert_eq!(s("sqrt(2)").ratio_to(&s("1")), None);
        assert_eq!(s("3*sqrt(7)").ratio_to(&s("sqrt(7)")), Some(int(3)));
        assert_eq!(Surd::zero().ratio_to(&Surd::zero()), Some(int(1)));
    }

    #[test]
    fn interval_encloses_value() {
        let v = s("1/3 + 2*sqrt(2) - sqrt(13)");
        let (lo, hi) = v.interval(80);
        let x = 1.0 / 3.0 + 2.0 * 2f64.sqrt() - 13f64.sqrt();
        assert!(rat::to_f64(&lo) <= x + 1e-12 && rat::to_f64(&hi) >= x - 1e-12);
        assert!(&hi - &lo < frac(1, 1 << 30));
    }
}
