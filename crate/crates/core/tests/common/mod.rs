//! Brute-force oracles shared by the property and acceptance suites. None of them call into
//! the library's decision procedures.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Membership table of the monoid generated by `gens` on `0..=bound`.
pub fn table(gens: &[u64], bound: usize) -> Vec<bool> {
    let mut t = vec![false; bound + 1];
    t[0] = true;
    for i in 1..=bound {
        t[i] = gens.iter().any(|&g| g as usize <= i && t[i - g as usize]);
    }
    t
}

/// Bound past which every multiple of the gcd is a member.
pub fn safe_bound(gens: &[u64]) -> usize {
    let mn = *gens.iter().min().unwrap() as usize;
    let mx = *gens.iter().max().unwrap() as usize;
    mn * mx + 2 * mx
}

/// Whether `M ∪ -M` is closed under subtraction, by checking every pair below the bound.
pub fn pm_closed(gens: &[u64]) -> bool {
    let b = safe_bound(gens);
    let t = table(gens, b);
    let members: Vec<usize> = (0..=b).filter(|&i| t[i]).collect();
    members.iter().all(|&x| members.iter().filter(|&&y| y > x).all(|&y| t[y - x]))
}

/// `s` in `(M - M)+` with `p s ∈ M` and `s ∉ M`, by scanning the table.
pub fn p_divisibility_counterexample(gens: &[u64], p: usize) -> Option<usize> {
    let b = safe_bound(gens);
    let t = table(gens, b * p);
    let g = gens.iter().fold(0u64, |a, &x| gcd(a, x)) as usize;
    (1..=b).filter(|s| s % g == 0).find(|&s| t[p * s] && !t[s])
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Prime factorization by trial division.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `gcd(a, b)` with every factor `p` removed, rebuilt from the factorization.
pub fn p_free_gcd(a: u64, b: u64, p: u64) -> u64 {
    factor(gcd(a, b)).into_iter().filter(|(q, _)| *q != p).map(|(q, e)| q.pow(e)).product()
}

/// `count` generator lists with 1 to 4 entries in `1..=30`.
pub fn random_fingen(seed: u64, count: usize) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            (0..k).map(|_| rng.gen_range(1..=30)).collect()
        })
        .collect()
}
