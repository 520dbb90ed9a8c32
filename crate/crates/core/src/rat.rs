//! Rational helpers on top of `num_rational::BigRational`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational `{text}`: {reason}")]
pub struct ParseRatError {
    pub text: String,
    pub reason: &'static str,
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p`, `p/q`.
pub fn parse_rat(text: &str) -> Result<Rat, ParseRatError> {
    let t = text.trim();
    let err = |reason| ParseRatError { text: text.to_string(), reason };
    if t.is_empty() {
        return Err(err("empty"));
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("numerator is not an integer"))?;
    let d: BigInt = d.parse().map_err(|_| err("denominator is not an integer"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rat(q: &Rat) -> String {
    q.to_string()
}

/// Nearest-ish f64 for a rational; relative error at most a few ulps.
pub fn to_f64(q: &Rat) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (q.numer().to_i64(), q.denom().to_i64()) {
        if n.unsigned_abs() < (1u64 << 53) && d < (1i64 << 53) {
            return n as f64 / d as f64;
        }
    }
    let n = q.numer().abs();
    let d = q.denom();
    // scale so the integer quotient carries about 64 significant bits
    let shift = 64 + d.bits() as i64 - n.bits() as i64;
    let quot = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    let mag = quot.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-(shift.clamp(-2000, 2000) as i32));
    if q.is_negative() {
        -mag
    } else {
        mag
    }
}

/// The rational with the smallest denominator (then numerator) strictly inside `(lo, hi)`.
/// Requires `0 <= lo < hi`.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi && !lo.is_negative(), "simplest_between needs 0 <= lo < hi");
    let fl = lo.floor();
    let next = &fl + Rat::one();
    if &next < hi {
        return next;
    }
    let base = fl.clone();
    let lo_frac = lo - &base;
    let hi_frac = hi - &base;
    let inner = if lo_frac.is_zero() {
        // (0, hi_frac): reciprocal interval (1/hi_frac, inf)
        (hi_frac.recip()).floor() + Rat::one()
    } else {
        simplest_between(&hi_frac.recip(), &lo_frac.recip())
    };
    base + inner.recip()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

/// Exact square root of a nonnegative rational if it is a perfect square.
pub fn rat_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

pub fn sign_of(q: &Rat) -> Sign {
    if q.is_zero() {
        Sign::NoSign
    } else if q.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// Converts a positive rational with denominator 1 into a `u64`.
pub fn to_u64(q: &Rat) -> Option<u64> {
    if is_integer(q) {
        q.numer().to_u64()
    } else {
        None
    }
}
