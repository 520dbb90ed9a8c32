use num_traits::{One, Signed, Zero};

use super::{directed_point, GeoError, SphereOracle};
use crate::monoid::{Monoid, SearchWindow};
use crate::rat::Rat;
use crate::surd::Surd;

/// Distance between two map points against the bounds `|s - t| <= d <= inf{u + v}` in units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairBound {
    pub s: Rat,
    pub t: Rat,
    pub dist: Surd,
    pub lower: Surd,
    /// `None` when no bound could be established within the search limits.
    pub upper: Option<Surd>,
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// `d = |s - t|` holds exactly when `|s - t|` is in the monoid.
    pub equality_matches: bool,
}

#[derive(Debug, Clone)]
pub struct HypersphereMap<P> {
    pub unit: Surd,
    pub points: Vec<(Rat, P)>,
    pub pairs: Vec<PairBound>,
}

impl<P> HypersphereMap<P> {
    pub fn all_ok(&self) -> bool {
        self.pairs.iter().all(|p| p.lower_ok && p.upper_ok && p.equality_matches)
    }

    pub fn unverified(&self) -> usize {
        self.pairs.iter().filter(|p| p.upper.is_none()).count()
    }

    pub fn point(&self, t: &Rat) -> Option<&P> {
        self.points.iter().find(|(s, _)| s == t).map(|(_, p)| p)
    }
}

/// Smallest `v` in the monoid with `t + v` in the monoid (`v > 0` when `positive`).
fn companion(m: &Monoid, t: &Rat, positive: bool, denom_bound: u64) -> Option<Rat> {
    if !positive && m.contains(t) {
        return Some(Rat::zero());
    }
    let inf = if positive { m.positive_companion_inf(t) } else { m.companion_inf(t) }?;
    if inf.is_positive() && m.contains(&inf) && m.contains(&(t + &inf)) {
        return Some(inf);
    }
    let w = SearchWindow::new(&inf + Rat::one() + m.min_positive().unwrap_or_else(Rat::one), denom_bound);
    m.elements(&w).into_iter().filter(|v| v.is_positive() && m.contains(&(t + v))).min()
}

/// Map `t -> l(t)` on the window of `M - M` with `l(0) = a` and `l(q) = b` where
/// `d(a, b) = q * unit`; `M` and `t` are in units of `unit`. Each point is reached by walking
/// `u` units from `a` toward `b` and then `v` units back toward `a`, where `u, v` lie in `M` and
/// `u - v = t`.
pub fn hypersphere_map<O: SphereOracle<Dist = Surd>>(
    o: &O,
    a: &O::Point,
    b: &O::Point,
    unit: &Surd,
    m: &Monoid,
    window: &Rat,
    denom_bound: u64,
) -> Result<HypersphereMap<O::Point>, GeoError> {
    if a == b {
        return Err(GeoError::Precondition("anchors must differ".into()));
    }
    let r = unit.clone();
    let q = o.dist(a, b).ratio_to(unit);
    if !q.as_ref().is_some_and(|q| q.is_positive() && m.contains(q)) {
        return Err(GeoError::Precondition("the anchor distance must be a monoid multiple of the unit".into()));
    }
    let mut ts = m.difference_candidates(&SearchWindow::new(window.clone(), denom_bound));
    let negs: Vec<Rat> = ts.iter().filter(|t| t.is_positive()).map(|t| -t).collect();
    ts.extend(negs);
    ts.sort();
    let mut points = Vec::with_capacity(ts.len());
    for t in &ts {
        let p = if t.is_zero() {
            a.clone()
        } else {
            let (u, v) = if t.is_positive() {
                let v = companion(m, t, false, denom_bound)
                    .ok_or_else(|| GeoError::Precondition(format!("no monoid pair with difference {t}")))?;
                (t + &v, v)
            } else {
                let at = t.abs();
                let u = companion(m, &at, true, denom_bound)
                    .ok_or_else(|| GeoError::Precondition(format!("no monoid pair with difference {t}")))?;
                let v = &u + &at;
                (u, v)
            };
            let x = directed_point(o, a, b, &r.scale(&u))?;
            if v.is_zero() {
                x
            } else {
                directed_point(o, &x, a, &r.scale(&v))?
            }
        };
        points.push((t.clone(), p));
    }
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (s, t) = (&points[i].0, &points[j].0);
            let gap = (t - s).abs();
            let dist = o.dist(&points[i].1, &points[j].1);
            let lower = r.scale(&gap);
            let upper = m.difference_cost(&gap).map(|c| r.scale(&c));
            pairs.push(PairBound {
                s: s.clone(),
                t: t.clone(),
                lower_ok: lower <= dist,
                upper_ok: upper.as_ref().is_some_and(|u| dist <= *u),
                equality_matches: (dist == lower) == m.contains(&gap),
                dist,
                lower,
                upper,
            });
        }
    }
    Ok(HypersphereMap { unit: r, points, pairs })
}
