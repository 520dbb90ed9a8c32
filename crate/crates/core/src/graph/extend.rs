use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hat_from, GraphError, GraphMetric};
use crate::rat::{int, next_prime, simplest_between, Rat};
use crate::surd::Surd;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionPolicy {
    pub seed: u64,
    pub max_backtracks: usize,
    /// New values use primes above this bound and above every prime already in the graph.
    pub prime_floor: u64,
}

impl Default for ExtensionPolicy {
    fn default() -> Self {
        ExtensionPolicy { seed: 0, max_backtracks: 1000, prime_floor: 1 }
    }
}

impl ExtensionPolicy {
    pub fn seeded(seed: u64) -> Self {
        ExtensionPolicy { seed, ..Self::default() }
    }
}

/// One new edge. `value = c + e*sqrt(prime)` with `prime` used by no other value, which places
/// the value in its own generic family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub pair: (usize, usize),
    pub value: Surd,
    pub prime: u64,
    /// Rational bracket inside `(check, hat)` the value was drawn from.
    pub lower: Surd,
    pub upper: Surd,
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub full: GraphMetric,
    pub assignments: Vec<Assignment>,
    pub backtracks: usize,
}

// Relative padding for f64 sums of three terms; several ulps of headroom.
const PAD: f64 = 1.0 / (1u64 << 50) as f64;

#[derive(Debug, Clone, Copy)]
struct Ivl {
    lo: f64,
    hi: f64,
}

impl Ivl {
    const INF: Ivl = Ivl { lo: f64::INFINITY, hi: f64::INFINITY };
    const ZERO: Ivl = Ivl { lo: 0.0, hi: 0.0 };

    fn of(s: &Surd) -> Ivl {
        let (lo, hi) = s.float_bounds();
        Ivl { lo, hi }
    }

    fn add3(a: Ivl, b: Ivl, c: Ivl) -> Ivl {
        let lo = a.lo + b.lo + c.lo;
        let hi = a.hi + b.hi + c.hi;
        Ivl {
            lo: lo - (a.lo.abs() + b.lo.abs() + c.lo.abs()) * PAD,
            hi: hi + (a.hi.abs() + b.hi.abs() + c.hi.abs()) * PAD,
        }
    }

    fn min(self, o: Ivl) -> Ivl {
        Ivl { lo: self.lo.min(o.lo), hi: self.hi.min(o.hi) }
    }
}

/// All-pairs shortest paths in interval arithmetic; every cell encloses the exact value.
struct FloatHat {
    n: usize,
    h: Vec<Ivl>,
}

impl FloatHat {
    fn build(n: usize, edges: &[(usize, usize, Ivl)]) -> Self {
        let mut h = vec![Ivl::INF; n * n];
        for i in 0..n {
            h[i * n + i] = Ivl::ZERO;
        }
        for &(u, v, w) in edges {
            h[u * n + v] = h[u * n + v].min(w);
            h[v * n + u] = h[v * n + u].min(w);
        }
        for k in 0..n {
            for i in 0..n {
                let ik = h[i * n + k];
                if ik.lo.is_infinite() {
                    continue;
                }
                for j in 0..n {
                    let c = Ivl::add3(ik, h[k * n + j], Ivl::ZERO);
                    h[i * n + j] = h[i * n + j].min(c);
                }
            }
        }
        FloatHat { n, h }
    }

    fn get(&self, x: usize, y: usize) -> Ivl {
        self.h[x * self.n + y]
    }

    fn add_edge(&mut self, x: usize, y: usize, w: Ivl) {
        let n = self.n;
        let col_x: Vec<Ivl> = (0..n).map(|u| self.h[u * n + x]).collect();
        let col_y: Vec<Ivl> = (0..n).map(|u| self.h[u * n + y]).collect();
        for u in 0..n {
            for v in 0..n {
                let a = Ivl::add3(col_x[u], w, col_y[v]);
                let b = Ivl::add3(col_y[u], w, col_x[v]);
                let cell = &mut self.h[u * n + v];
                *cell = cell.min(a).min(b);
            }
        }
    }

    fn check(&self, edges: &[(usize, usize, Ivl)], x: usize, y: usize) -> Ivl {
        let mut lo = 0.0f64;
        let mut hi = 0.0f64;
        for &(a, b, w) in edges {
            for (a, b) in [(a, b), (b, a)] {
                let (ha, hb) = (self.get(a, x), self.get(b, y));
                let tlo = w.lo - ha.hi - hb.hi;
                let thi = w.hi - ha.lo - hb.lo;
                let pad = (w.lo.abs() + ha.hi.abs() + hb.hi.abs()) * PAD;
                lo = lo.max(tlo - pad);
                hi = hi.max(thi + pad);
            }
        }
        Ivl { lo, hi }
    }
}

fn exact_gap(g: &GraphMetric, x: usize, y: usize) -> (Surd, Surd) {
    let hx = hat_from(g, x);
    let hy = hat_from(g, y);
    let mut c = Surd::zero();
    for (a, b, w) in g.edges() {
        for (a, b) in [(a, b), (b, a)] {
            if let (Some(p), Some(q)) = (&hx[a], &hy[b]) {
                let t = &(w - p) - q;
                if t > c {
                    c = t;
                }
            }
        }
    }
    (c, hx[y].clone().expect("connected graph"))
}

/// Rational `lo < hi` with `check <= lo` and `hi <= hat`, or `None` when the gap is empty.
fn rational_gap(c: &Surd, h: &Surd) -> Option<(Rat, Rat)> {
    if c.cmp(h) != Ordering::Less {
        return None;
    }
    let mut bits = 64;
    loop {
        let (_, c_hi) = c.interval(bits);
        let (h_lo, _) = h.interval(bits);
        let c_hi = if c_hi.is_negative() { Rat::zero() } else { c_hi };
        if c_hi < h_lo {
            return Some((c_hi, h_lo));
        }
        bits *= 2;
    }
}

fn to_rat(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

fn sample(lo: &Rat, hi: &Rat, p: u64, rng: &mut ChaCha8Rng) -> Surd {
    let width = hi - lo;
    let k: i64 = rng.gen_range(1..=6);
    let a = lo + &width * Rat::new(k.into(), 8.into());
    let b = lo + &width * Rat::new((k + 1).into(), 8.into());
    let c = simplest_between(&a, &b);
    let gap = (&c - lo).min(hi - &c);
    let pr = int(p as i64);
    let e = simplest_between(&(&gap / (&pr * int(4))), &(&gap / (&pr * int(2))));
    let e = if rng.gen_bool(0.5) { e } else { -e };
    Surd::new(c, [(p, e)]).expect("prime")
}

/// Completes a floppy graph metric to a full metric. Missing pairs are filled in
/// lexicographic order with values strictly between `check` and `hat`; each value carries a
/// fresh prime so all new values are distinct and rationally independent. When a later pair has
/// no room left, the most recent assignment is drawn again.
pub fn extend_to_full(g: &GraphMetric, policy: &ExtensionPolicy) -> Result<Extension, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.n();
    let missing = g.missing_pairs();
    let mut work = g.clone();
    let mut edges: Vec<(usize, usize, Ivl)> = g.edges().map(|(u, v, w)| (u, v, Ivl::of(w))).collect();
    let mut table = FloatHat::build(n, &edges);
    for &(u, v, w) in &edges {
        if table.get(u, v).hi < w.lo {
            return Err(GraphError::NotAGraphMetric(g.name(u).into(), g.name(v).into()));
        }
    }
    let mut prime = g.edges().flat_map(|(_, _, w)| w.primes().collect::<Vec<_>>()).fold(policy.prime_floor, u64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut assignments: Vec<Assignment> = Vec::new();
    let mut backtracks = 0;
    let mut i = 0;
    while i < missing.len() {
        let (x, y) = missing[i];
        let (h, c) = (table.get(x, y), table.check(&edges, x, y));
        let gap = if c.hi < h.lo {
            Some((to_rat(c.hi.max(0.0)), to_rat(h.lo)))
        } else {
            let (ce, he) = exact_gap(&work, x, y);
            rational_gap(&ce, &he)
        };
        match gap {
            Some((lo, hi)) => {
                prime = next_prime(prime);
                let value = sample(&lo, &hi, prime, &mut rng);
                let w = Ivl::of(&value);
                work.set_edge(x, y, value.clone())?;
                edges.push((x, y, w));
                table.add_edge(x, y, w);
                assignments.push(Assignment { pair: (x, y), value, prime, lower: Surd::from_rat(lo), upper: Surd::from_rat(hi) });
                i += 1;
            }
            None => {
                let pair = (g.name(x).to_string(), g.name(y).to_string());
                if backtracks >= policy.max_backtracks || assignments.is_empty() {
                    return Err(GraphError::ExtensionExhausted { pair, backtracks });
                }
                backtracks += 1;
                let last = assignments.pop().expect("nonempty");
                work.remove_edge(last.pair.0, last.pair.1);
                edges.pop();
                table = FloatHat::build(n, &edges);
                i -= 1;
            }
        }
    }
    Ok(Extension { full: work, assignments, backtracks })
}
