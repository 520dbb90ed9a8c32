//! Geometry of Banakh spaces over a sphere oracle: every nonempty sphere of positive radius
//! `r` has exactly two points, and they are `2r` apart.

mod fragment;
mod hyper;
mod line;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::rat::{int, Rat};
use crate::surd::Surd;

pub use fragment::{
    embed_in_real_line, real_line_banakh_check, verify_fragment, Embedding, FragmentOracle, FragmentReport,
    MetricFragment, RealLineVerdict, Violation,
};
pub use hyper::{hypersphere_map, HypersphereMap, PairBound};
pub use line::LineOracle;

/// Distance values an oracle hands out. Only exact operations are required.
pub trait Distance: Clone + Eq + Hash + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `Some(q)` with `self = q * other`.
    fn ratio_to(&self, other: &Self) -> Option<Rat>;
    /// `q * self` for `q >= 0`.
    fn scaled(&self, q: &Rat) -> Self;
    /// The sum as a distance value when it is representable.
    fn try_add(&self, other: &Self) -> Option<Self>;
}

impl Distance for Surd {
    fn zero() -> Self {
        Surd::zero()
    }

    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }

    fn ratio_to(&self, other: &Self) -> Option<Rat> {
        Surd::ratio_to(self, other)
    }

    fn scaled(&self, q: &Rat) -> Self {
        self.scale(q)
    }

    fn try_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
}

pub trait SphereOracle {
    type Point: Clone + Eq + Hash + Debug;
    type Dist: Distance;

    fn dist(&self, x: &Self::Point, y: &Self::Point) -> Self::Dist;

    /// Points at distance `r` from `c`; at most two in a Banakh space.
    fn sphere(&self, c: &Self::Point, r: &Self::Dist) -> Vec<Self::Point>;

    /// Whether spheres are reported in full. Finite windows return truncated spheres.
    fn complete(&self) -> bool {
        true
    }

    /// `d(x, z) = d(x, y) + d(y, z)`.
    fn between(&self, x: &Self::Point, y: &Self::Point, z: &Self::Point) -> bool {
        match self.dist(x, y).try_add(&self.dist(y, z)) {
            Some(s) => s == self.dist(x, z),
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeoError {
    #[error("sphere around {center} of radius {radius} is missing a point")]
    Incomplete { center: String, radius: String },
    #[error("Banakh law fails: {0}")]
    BanakhViolation(String),
    #[error("no point at distance {radius} from {center}")]
    NoSuchRadius { center: String, radius: String },
    #[error("precondition fails: {0}")]
    Precondition(String),
}

fn incomplete<P: Debug, D: Debug>(c: &P, r: &D) -> GeoError {
    GeoError::Incomplete { center: format!("{c:?}"), radius: format!("{r:?}") }
}

fn no_radius<P: Debug, D: Debug>(c: &P, r: &D) -> GeoError {
    GeoError::NoSuchRadius { center: format!("{c:?}"), radius: format!("{r:?}") }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Parallel,
    Antiparallel,
    Incomparable,
}

/// The unique point at distance `ra` from `a` and `rb` from `b`.
pub fn gps_locate<O: SphereOracle>(
    o: &O,
    a: &O::Point,
    b: &O::Point,
    ra: &O::Dist,
    rb: &O::Dist,
) -> Result<Option<O::Point>, GeoError> {
    if a == b {
        return Err(GeoError::Precondition("gps anchors must differ".into()));
    }
    let sb = o.sphere(b, rb);
    let hits: Vec<O::Point> = o.sphere(a, ra).into_iter().filter(|x| sb.contains(x)).collect();
    match hits.len() {
        0 => Ok(None),
        1 => Ok(hits.into_iter().next()),
        _ => Err(GeoError::BanakhViolation(format!("{hits:?} share distances to {a:?} and {b:?}"))),
    }
}

fn next_on_line<O: SphereOracle>(o: &O, prev: &O::Point, cur: &O::Point, r: &O::Dist) -> Result<O::Point, GeoError> {
    let two = r.scaled(&int(2));
    let s = o.sphere(cur, r);
    let mut it = s.iter().filter(|p| o.dist(prev, p) == two);
    match (it.next(), it.next()) {
        (Some(p), None) => Ok(p.clone()),
        (Some(_), Some(_)) => Err(GeoError::BanakhViolation(format!("two continuations of the line at {cur:?}"))),
        (None, _) => Err(incomplete(cur, r)),
    }
}

/// `x_0 = a, x_1 = b, ..., x_n` with `d(x_i, x_j) = |i - j| d(a, b)`.
pub fn ray<O: SphereOracle>(o: &O, a: &O::Point, b: &O::Point, n: usize) -> Result<Vec<O::Point>, GeoError> {
    if a == b {
        return Err(GeoError::Precondition("line needs two distinct points".into()));
    }
    let r = o.dist(a, b);
    let mut out = vec![a.clone()];
    if n >= 1 {
        out.push(b.clone());
    }
    while out.len() <= n {
        let k = out.len();
        let p = next_on_line(o, &out[k - 2], &out[k - 1], &r)?;
        out.push(p);
    }
    Ok(out)
}

/// Points `x_{-n}, ..., x_n` of the line through `x_0 = a` and `x_1 = b`.
pub fn discrete_line<O: SphereOracle>(o: &O, a: &O::Point, b: &O::Point, n: usize) -> Result<Vec<O::Point>, GeoError> {
    if n == 0 {
        return Ok(vec![a.clone()]);
    }
    let fwd = ray(o, a, b, n)?;
    let r = o.dist(a, b);
    let mut back = vec![a.clone()];
    let mut prev = b.clone();
    while back.len() <= n {
        let cur = back.last().expect("nonempty").clone();
        let p = next_on_line(o, &prev, &cur, &r)?;
        prev = cur;
        back.push(p);
    }
    back.reverse();
    back.pop();
    back.extend(fwd);
    Ok(back)
}

/// Orientation of `x` and `y` seen from `origin`, by comparing the lines through them at a
/// common length. When a truncated sphere blocks a line, falls back to additivity.
pub fn orientation<O: SphereOracle>(o: &O, origin: &O::Point, x: &O::Point, y: &O::Point) -> Result<Orientation, GeoError> {
    if x == origin || y == origin {
        return Err(GeoError::Precondition("orientation needs points distinct from the origin".into()));
    }
    let (dx, dy) = (o.dist(origin, x), o.dist(origin, y));
    let Some(q) = dx.ratio_to(&dy) else {
        return Ok(Orientation::Incomparable);
    };
    // den * dx = num * dy
    let to_usize = |n: &num_bigint::BigInt| usize::try_from(n).ok();
    let (Some(num), Some(den)) = (to_usize(q.numer()), to_usize(q.denom())) else {
        return Err(GeoError::Precondition("distance ratio too large".into()));
    };
    let lines = ray(o, origin, x, den).and_then(|lx| Ok((lx, ray(o, origin, y, num)?)));
    match lines {
        Ok((lx, ly)) => Ok(if lx.last() == ly.last() { Orientation::Parallel } else { Orientation::Antiparallel }),
        Err(GeoError::Incomplete { .. }) => orientation_by_additivity(o, origin, x, y),
        Err(e) => Err(e),
    }
}

/// Antiparallel exactly when `d(x, y) = d(x, origin) + d(origin, y)`.
pub fn orientation_by_additivity<O: SphereOracle>(
    o: &O,
    origin: &O::Point,
    x: &O::Point,
    y: &O::Point,
) -> Result<Orientation, GeoError> {
    if x == origin || y == origin {
        return Err(GeoError::Precondition("orientation needs points distinct from the origin".into()));
    }
    if o.dist(origin, x).ratio_to(&o.dist(origin, y)).is_none() {
        return Ok(Orientation::Incomparable);
    }
    Ok(if o.between(x, origin, y) { Orientation::Antiparallel } else { Orientation::Parallel })
}

fn require_commensurable<O: SphereOracle>(o: &O, x: &O::Point, y: &O::Point, r: &O::Dist) -> Result<(), GeoError> {
    if x == y {
        return Err(GeoError::Precondition("the two reference points must differ".into()));
    }
    if r.ratio_to(&o.dist(x, y)).is_none() {
        return Err(GeoError::Precondition(format!("radius {r:?} is not a rational multiple of d({x:?}, {y:?})")));
    }
    Ok(())
}

fn pick_one<O: SphereOracle>(
    o: &O,
    center: &O::Point,
    r: &O::Dist,
    members: &[O::Point],
    keep: impl Fn(&O::Point) -> bool,
) -> Result<O::Point, GeoError> {
    if members.is_empty() {
        return Err(no_radius(center, r));
    }
    let hits: Vec<&O::Point> = members.iter().filter(|p| keep(p)).collect();
    match hits.len() {
        1 => Ok(hits[0].clone()),
        0 if members.len() == 1 && !o.complete() => Err(incomplete(center, r)),
        0 => Err(GeoError::BanakhViolation(format!("no member of the sphere around {center:?} of radius {r:?} qualifies"))),
        _ => Err(GeoError::BanakhViolation(format!("both members of the sphere around {center:?} of radius {r:?} qualify"))),
    }
}

/// The point `z` with `d(y, z) = r` and `d(x, z) = d(x, y) + r`.
pub fn segment_construct<O: SphereOracle>(o: &O, x: &O::Point, y: &O::Point, r: &O::Dist) -> Result<O::Point, GeoError> {
    if r.is_zero() {
        return Ok(y.clone());
    }
    require_commensurable(o, x, y, r)?;
    let members = o.sphere(y, r);
    pick_one(o, y, r, &members, |z| o.between(x, y, z))
}

/// The point `y` with `d(x, y) = a` and `d(y, z) = b`, where `a + b = d(x, z)`.
pub fn split_segment<O: SphereOracle>(
    o: &O,
    x: &O::Point,
    z: &O::Point,
    a: &O::Dist,
    b: &O::Dist,
) -> Result<O::Point, GeoError> {
    if a.try_add(b).as_ref() != Some(&o.dist(x, z)) {
        return Err(GeoError::Precondition("the parts must add up to the segment length".into()));
    }
    if a.is_zero() {
        return Ok(x.clone());
    }
    if b.is_zero() {
        return Ok(z.clone());
    }
    require_commensurable(o, x, z, a)?;
    match gps_locate(o, x, z, a, b)? {
        Some(p) => Ok(p),
        None if o.complete() => Err(no_radius(x, a)),
        None => Err(incomplete(x, a)),
    }
}

/// The member of the sphere around `x` of radius `r` lying on the same side of `x` as `y`.
pub fn directed_point<O: SphereOracle>(o: &O, x: &O::Point, y: &O::Point, r: &O::Dist) -> Result<O::Point, GeoError> {
    if r.is_zero() {
        return Err(GeoError::Precondition("directed point needs a positive radius".into()));
    }
    require_commensurable(o, x, y, r)?;
    let members = o.sphere(x, r);
    pick_one(o, x, r, &members, |z| !o.between(z, x, y))
}

/// `k -> l(k r)` for `|k| <= n`, an isometry from `Z r` onto the spheres around `a`.
pub fn zr_sphere_map<O: SphereOracle>(o: &O, a: &O::Point, r: &O::Dist, n: usize) -> Result<Vec<(i64, O::Point)>, GeoError> {
    if r.is_zero() {
        return Err(GeoError::Precondition("radius must be positive".into()));
    }
    let first = o.sphere(a, r);
    let b = first.first().ok_or_else(|| no_radius(a, r))?;
    let line = discrete_line(o, a, b, n)?;
    let out: Vec<(i64, O::Point)> = line.into_iter().enumerate().map(|(i, p)| (i as i64 - n as i64, p)).collect();
    for k in 1..=n {
        let s = o.sphere(a, &r.scaled(&int(k as i64)));
        let (plus, minus) = (&out[n + k].1, &out[n - k].1);
        let fits = s.iter().all(|p| p == plus || p == minus);
        let full = !o.complete() || (s.contains(plus) && s.contains(minus));
        if !fits || !full {
            return Err(GeoError::BanakhViolation(format!("sphere of radius {k} r around {a:?} is not the line pair")));
        }
    }
    Ok(out)
}
