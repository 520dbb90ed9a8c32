use std::collections::{BTreeSet, HashMap};

use num_traits::Signed;
use thiserror::Error;

use super::SphereOracle;
use crate::graph::GraphMetric;
use crate::rat::{fmt_rat, int, Rat};
use crate::surd::Surd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FragmentError {
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("index {0} out of range")]
    OutOfRange(usize),
    #[error("distance {0}-{1} given twice")]
    DuplicatePair(usize, usize),
    #[error("distance {0}-{1} missing")]
    MissingPair(usize, usize),
    #[error("diagonal entry at {0} must be zero")]
    NonzeroDiagonal(usize),
    #[error("graph is not full")]
    NotFull,
}

/// Finite set of named points with all pairwise distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricFragment {
    names: Vec<String>,
    d: Vec<Surd>,
}

impl MetricFragment {
    /// Builds from the upper triangle; every pair `i < j` must appear exactly once.
    pub fn from_entries(names: Vec<String>, entries: Vec<(usize, usize, Surd)>) -> Result<Self, FragmentError> {
        let n = names.len();
        let mut seen = BTreeSet::new();
        for (i, nm) in names.iter().enumerate() {
            if names[..i].contains(nm) {
                return Err(FragmentError::DuplicatePoint(nm.clone()));
            }
        }
        let mut d = vec![Surd::zero(); n * n];
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(FragmentError::OutOfRange(i.max(j)));
            }
            if i == j {
                if !v.is_zero() {
                    return Err(FragmentError::NonzeroDiagonal(i));
                }
                continue;
            }
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            if !seen.insert((a, b)) {
                return Err(FragmentError::DuplicatePair(a, b));
            }
            d[a * n + b] = v.clone();
            d[b * n + a] = v;
        }
        for a in 0..n {
            for b in a + 1..n {
                if !seen.contains(&(a, b)) {
                    return Err(FragmentError::MissingPair(a, b));
                }
            }
        }
        Ok(MetricFragment { names, d })
    }

    pub fn from_fn(names: Vec<String>, f: impl Fn(usize, usize) -> Surd) -> Self {
        let n = names.len();
        let mut d = vec![Surd::zero(); n * n];
        for a in 0..n {
            for b in a + 1..n {
                let v = f(a, b);
                d[a * n + b] = v.clone();
                d[b * n + a] = v;
            }
        }
        MetricFragment { names, d }
    }

    pub fn from_graph(g: &GraphMetric) -> Result<Self, FragmentError> {
        if !g.is_full() {
            return Err(FragmentError::NotFull);
        }
        Ok(Self::from_fn(g.names().to_vec(), |a, b| g.edge(a, b).expect("full").clone()))
    }

    /// Points of the real line with the usual distance.
    pub fn from_rats(xs: &[Rat]) -> Self {
        Self::from_fn(xs.iter().map(fmt_rat).collect(), |a, b| Surd::from_rat((&xs[a] - &xs[b]).abs()))
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn dist(&self, a: usize, b: usize) -> &Surd {
        &self.d[a * self.n() + b]
    }

    pub fn restrict(&self, keep: &[usize]) -> MetricFragment {
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        Self::from_fn(names, |a, b| self.dist(keep[a], keep[b]).clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositive { a: usize, b: usize },
    Triangle { a: usize, b: usize, c: usize },
    SphereTooLarge { center: usize, radius: Surd, members: Vec<usize> },
    DiameterLaw { center: usize, radius: Surd, pair: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentReport {
    pub metric_ok: bool,
    pub banakh_consistent: bool,
    /// Spheres with a single member inside the fragment.
    pub incomplete_spheres: Vec<(usize, Surd)>,
    pub violations: Vec<Violation>,
}

fn spheres_of(f: &MetricFragment, c: usize) -> Vec<(Surd, Vec<usize>)> {
    let mut by: HashMap<&Surd, Vec<usize>> = HashMap::new();
    for x in 0..f.n() {
        if x != c {
            by.entry(f.dist(c, x)).or_default().push(x);
        }
    }
    let mut out: Vec<(Surd, Vec<usize>)> = by.into_iter().map(|(r, m)| (r.clone(), m)).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn triangle_ok(f: &MetricFragment, bounds: &[(f64, f64)], a: usize, b: usize, c: usize) -> bool {
    let n = f.n();
    let (ab, bc, ac) = (bounds[a * n + b], bounds[b * n + c], bounds[a * n + c]);
    let fast = |x: (f64, f64), y: (f64, f64), z: (f64, f64)| {
        let pad = (x.1.abs() + y.1.abs() + z.1.abs()) * 1e-15;
        if x.0 + y.0 - pad > z.1 {
            Some(true)
        } else if x.1 + y.1 + pad < z.0 {
            Some(false)
        } else {
            None
        }
    };
    let exact = |x: usize, y: usize, z: usize, u: usize, v: usize, w: usize| f.dist(x, y) + f.dist(z, u) >= *f.dist(v, w);
    let one = |r: Option<bool>, e: &dyn Fn() -> bool| r.unwrap_or_else(e);
    one(fast(ab, bc, ac), &|| exact(a, b, b, c, a, c))
        && one(fast(ab, ac, bc), &|| exact(a, b, a, c, b, c))
        && one(fast(ac, bc, ab), &|| exact(a, c, b, c, a, b))
}

/// Checks the metric axioms exactly and the two-point sphere law on every sphere inside the
/// fragment. Single-member spheres are reported as incomplete, not as failures.
pub fn verify_fragment(f: &MetricFragment) -> FragmentReport {
    let n = f.n();
    let mut violations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if f.dist(a, b).signum().is_le() {
                violations.push(Violation::NonPositive { a, b });
            }
        }
    }
    let bounds: Vec<(f64, f64)> = f.d.iter().map(Surd::float_bounds).collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !triangle_ok(f, &bounds, a, b, c) {
                    violations.push(Violation::Triangle { a, b, c });
                }
            }
        }
    }
    let metric_ok = violations.is_empty();
    let mut incomplete = Vec::new();
    let mut banakh_consistent = true;
    for c in 0..n {
        for (r, members) in spheres_of(f, c) {
            if r.signum().is_le() {
                continue;
            }
            match members.len() {
                1 => incomplete.push((c, r)),
                2 => {
                    if *f.dist(members[0], members[1]) != r.scale(&int(2)) {
                        banakh_consistent = false;
                        violations.push(Violation::DiameterLaw { center: c, radius: r, pair: (members[0], members[1]) });
                    }
                }
                _ => {
                    banakh_consistent = false;
                    violations.push(Violation::SphereTooLarge { center: c, radius: r, members });
                }
            }
        }
    }
    FragmentReport { metric_ok, banakh_consistent, incomplete_spheres: incomplete, violations }
}

/// Sphere oracle over a finite fragment; spheres near the edge of the data may be truncated.
#[derive(Debug, Clone)]
pub struct FragmentOracle {
    frag: MetricFragment,
    spheres: Vec<HashMap<Surd, Vec<usize>>>,
}

impl FragmentOracle {
    pub fn new(frag: MetricFragment) -> Self {
        let spheres = (0..frag.n())
            .map(|c| {
                let mut m: HashMap<Surd, Vec<usize>> = HashMap::new();
                for x in 0..frag.n() {
                    m.entry(frag.dist(c, x).clone()).or_default().push(x);
                }
                m
            })
            .collect();
        FragmentOracle { frag, spheres }
    }

    pub fn fragment(&self) -> &MetricFragment {
        &self.frag
    }
}

impl SphereOracle for FragmentOracle {
    type Point = usize;
    type Dist = Surd;

    fn dist(&self, x: &usize, y: &usize) -> Surd {
        self.frag.dist(*x, *y).clone()
    }

    fn sphere(&self, c: &usize, r: &Surd) -> Vec<usize> {
        self.spheres[*c].get(r).cloned().unwrap_or_default()
    }

    fn complete(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedding {
    /// Coordinate per point with `|c(x) - c(y)| = d(x, y)`.
    Coords(Vec<Surd>),
    /// A triple with no distance equal to the sum of the other two, or four points that
    /// admit no consistent signs.
    Obstruction(Vec<usize>),
}

fn collinear(f: &MetricFragment, a: usize, b: usize, c: usize) -> bool {
    let (ab, bc, ac) = (f.dist(a, b), f.dist(b, c), f.dist(a, c));
    ab + bc == *ac || ab + ac == *bc || ac + bc == *ab
}

fn fits(f: &MetricFragment, pts: &[usize], c: &[Surd]) -> Option<(usize, usize)> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if (&c[i] - &c[j]).abs() != *f.dist(pts[i], pts[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

fn four_point_search(f: &MetricFragment, pts: &[usize]) -> Option<Vec<Surd>> {
    (0u32..8).find_map(|mask| {
        let c: Vec<Surd> = pts
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let d = f.dist(pts[0], p).clone();
                if k > 0 && mask & (1 << (k - 1)) != 0 {
                    -d
                } else {
                    d
                }
            })
            .collect();
        let c: Vec<Surd> = c.iter().enumerate().map(|(k, x)| if k == 0 { Surd::zero() } else { x.clone() }).collect();
        fits(f, pts, &c).is_none().then_some(c)
    })
}

/// Isometric embedding into the real line, with `c(first point) = 0`, or an obstruction.
pub fn embed_in_real_line(f: &MetricFragment) -> Embedding {
    let n = f.n();
    if n == 0 {
        return Embedding::Coords(vec![]);
    }
    let all: Vec<usize> = (0..n).collect();
    if n == 4 {
        return match four_point_search(f, &all) {
            Some(c) => Embedding::Coords(c),
            None => Embedding::Obstruction(non_collinear_triple(f, &all).unwrap_or(all)),
        };
    }
    let far = (1..n).max_by(|&a, &b| f.dist(0, a).cmp(f.dist(0, b)));
    let Some(p1) = far else {
        return Embedding::Coords(vec![Surd::zero()]);
    };
    let c1 = f.dist(0, p1).clone();
    let mut c = vec![Surd::zero(); n];
    c[p1] = c1.clone();
    for z in 1..n {
        if z == p1 {
            continue;
        }
        let d0 = f.dist(0, z).clone();
        let target = f.dist(p1, z);
        if (&d0 - &c1).abs() == *target {
            c[z] = d0;
        } else if (&d0 + &c1) == *target {
            c[z] = -d0;
        } else {
            let mut t = vec![0, p1, z];
            t.sort_unstable();
            return Embedding::Obstruction(t);
        }
    }
    match fits(f, &all, &c) {
        None => Embedding::Coords(c),
        Some((x, y)) => {
            let quad = vec![0, p1, x, y];
            Embedding::Obstruction(non_collinear_triple(f, &quad).unwrap_or(quad))
        }
    }
}

fn non_collinear_triple(f: &MetricFragment, pts: &[usize]) -> Option<Vec<usize>> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                if !collinear(f, pts[i], pts[j], pts[k]) {
                    return Some(vec![pts[i], pts[j], pts[k]]);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealLineVerdict {
    pub holds: bool,
    /// `(x, y, z, v)` with `v` one of `x + y - z`, `x - y + z` missing from the set.
    pub witness: Option<(Rat, Rat, Rat, Rat)>,
}

/// Whether `x + y - z` and `x - y + z` lie in the set for all members `x, y, z`. In
/// window-relative mode, combinations outside the convex hull are ignored.
pub fn real_line_banakh_check(xs: &[Rat], window_relative: bool) -> RealLineVerdict {
    let set: BTreeSet<&Rat> = xs.iter().collect();
    let (Some(lo), Some(hi)) = (set.first().cloned(), set.last().cloned()) else {
        return RealLineVerdict { holds: true, witness: None };
    };
    for &x in &set {
        for &y in &set {
            for &z in &set {
                for v in [x + y - z, x - y + z] {
                    if window_relative && (&v < lo || &v > hi) {
                        continue;
                    }
                    if !set.contains(&v) {
                        return RealLineVerdict { holds: false, witness: Some((x.clone(), y.clone(), z.clone(), v)) };
                    }
                }
            }
        }
    }
    RealLineVerdict { holds: true, witness: None }
}
