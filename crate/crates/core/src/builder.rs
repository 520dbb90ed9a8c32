//! Finite-stage construction of metric fragments whose distances come from prescribed
//! monoids, with every complete sphere obeying the two-point law, plus an independent
//! certificate check.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::graph::{build_mu, extend_to_full, floppy_union, ExtensionPolicy, GraphError, GraphMetric, UnionMember};
use crate::monoid::{is_floppy, FloppyVerdict, Monoid, MonoidDesc, MonoidError, SearchWindow};
use crate::rat::{fmt_rat, int, Rat};
use crate::space::{verify_fragment, MetricFragment};
use crate::surd::Surd;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseRadius {
    pub radius: Surd,
    pub monoid: MonoidDesc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildSpec {
    pub radii: Vec<BaseRadius>,
    /// Number of stages including the initial one.
    pub stages: usize,
    pub window: Rat,
    pub denom_bound: u64,
    pub seed: u64,
    /// Half-width of attached copies; defaults to `window`.
    pub copy_window: Option<Rat>,
    pub max_backtracks: usize,
}

impl BuildSpec {
    pub fn new(radii: Vec<BaseRadius>, stages: usize, window: Rat, seed: u64) -> Self {
        BuildSpec { radii, stages, window, denom_bound: 4, seed, copy_window: None, max_backtracks: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("spec rejected: {0}")]
    SpecRejected(String),
    #[error("stage {stage}: no room for a value at {pair:?} after {backtracks} backtracks")]
    BuildExhausted { stage: usize, pair: (String, String), backtracks: usize },
    #[error("stage {stage}: condition ({condition}) fails: {detail}")]
    StageCondition { stage: usize, condition: u8, detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<MonoidError> for BuildError {
    fn from(e: MonoidError) -> Self {
        BuildError::SpecRejected(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereRecord {
    pub center: String,
    pub radius: Surd,
    pub members: Vec<String>,
}

/// A point whose sphere over one class had at most one other member and received a copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Target {
    pub stage: usize,
    pub center: String,
    pub class: usize,
    pub members: Vec<String>,
    pub copy: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageReport {
    pub stage: usize,
    pub points: usize,
    pub targets: usize,
    pub copies: usize,
    pub assignments: usize,
    pub backtracks: usize,
    /// Whether the floppy union check certified floppiness before completion; `None` without copies.
    pub union_certified: Option<bool>,
    pub monotone: bool,
    pub two_point_symmetry: bool,
    pub sphere_cap: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub classes: Vec<BaseRadius>,
    pub realized_distances: Vec<Surd>,
    pub generic_values: Vec<Surd>,
    pub complete_spheres: Vec<SphereRecord>,
    pub incomplete_spheres: usize,
    pub targets: Vec<Target>,
    pub stages: Vec<StageReport>,
}

#[derive(Debug, Clone)]
pub struct Class {
    pub radius: Surd,
    pub monoid: Monoid,
}

impl Class {
    /// Coordinate of `d` in units of this radius, when `d` is a rational multiple of it.
    pub fn coord(&self, d: &Surd) -> Option<Rat> {
        d.ratio_to(&self.radius)
    }
}

/// Groups commensurable radii. Commensurable radii must describe the same set.
pub fn classes_of(spec: &BuildSpec) -> Result<Vec<Class>, BuildError> {
    let mut out: Vec<Class> = Vec::new();
    let w = SearchWindow::new(spec.window.clone(), spec.denom_bound);
    for (i, b) in spec.radii.iter().enumerate() {
        if b.radius.signum().is_le() {
            return Err(BuildError::SpecRejected(format!("radius {i} is not positive")));
        }
        let m = Monoid::new(b.monoid.clone())?;
        if m.is_trivial() {
            return Err(BuildError::SpecRejected(format!("monoid of radius {i} has no nonzero elements")));
        }
        match is_floppy(&m, &w) {
            FloppyVerdict::Floppy(_) => {}
            FloppyVerdict::NonFloppy { r } => {
                return Err(BuildError::SpecRejected(format!("monoid of radius {i} is not floppy at {r}")));
            }
            FloppyVerdict::Inconclusive(why) => {
                return Err(BuildError::SpecRejected(format!("floppiness of radius {i} undecided: {why}")));
            }
        }
        if let Some(c) = out.iter().find(|c| c.coord(&b.radius).is_some()) {
            let q = c.coord(&b.radius).expect("commensurable");
            if !c.monoid.same_set_scaled(&m, &q) {
                return Err(BuildError::SpecRejected(format!("radius {i} is commensurable with an earlier radius but its monoid differs")));
            }
            continue;
        }
        out.push(Class { radius: b.radius.clone(), monoid: m });
    }
    Ok(out)
}

/// Class coordinate of every pair of a full graph.
struct Coords {
    n: usize,
    c: Vec<Option<(usize, Rat)>>,
}

impl Coords {
    fn new(f: &GraphMetric, classes: &[Class]) -> Self {
        let n = f.n();
        let mut c = vec![None; n * n];
        for (a, b, w) in f.edges() {
            let hit = classes.iter().enumerate().find_map(|(k, cl)| cl.coord(w).map(|q| (k, q)));
            c[a * n + b] = hit.clone();
            c[b * n + a] = hit;
        }
        Coords { n, c }
    }

    /// Points at distance in `M r` from `x`, including `x`.
    fn d_sphere(&self, classes: &[Class], x: usize, class: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| {
                z == x
                    || matches!(&self.c[x * self.n + z], Some((k, q)) if *k == class && classes[class].monoid.contains(q))
            })
            .collect()
    }
}

fn check_two_point_symmetry(f: &GraphMetric, classes: &[Class], active: usize) -> Result<(), String> {
    let co = Coords::new(f, classes);
    for c in 0..active {
        for x in 0..f.n() {
            let s = co.d_sphere(classes, x, c);
            if s.len() == 2 {
                let y = if s[0] == x { s[1] } else { s[0] };
                if co.d_sphere(classes, y, c) != s {
                    return Err(format!("sphere of {} over class {c} is {{{}}} but not conversely", f.name(x), f.name(y)));
                }
            }
        }
    }
    Ok(())
}

fn check_sphere_cap(f: &GraphMetric) -> Result<(), String> {
    let n = f.n();
    for x in 0..n {
        let mut by: HashMap<&Surd, Vec<usize>> = HashMap::new();
        for z in 0..n {
            if z != x {
                by.entry(f.edge(x, z).expect("full")).or_default().push(z);
            }
        }
        for (r, m) in by {
            if m.len() > 2 {
                return Err(format!("sphere of {} of radius {r} has {} points", f.name(x), m.len()));
            }
            if m.len() == 2 && *f.edge(m[0], m[1]).expect("full") != r.scale(&int(2)) {
                return Err(format!("sphere of {} of radius {r} has diameter other than {}", f.name(x), r.scale(&int(2))));
            }
        }
    }
    Ok(())
}

fn contains_values(small: &GraphMetric, big: &GraphMetric) -> bool {
    small.edges().all(|(a, b, w)| {
        let (Ok(u), Ok(v)) = (big.vertex(small.name(a)), big.vertex(small.name(b))) else { return false };
        big.edge(u, v) == Some(w)
    })
}

struct Run<'a> {
    spec: &'a BuildSpec,
    classes: Vec<Class>,
    generic: Vec<Surd>,
    prime_floor: u64,
    stages: Vec<StageReport>,
    targets: Vec<Target>,
    copies: usize,
}

impl Run<'_> {
    fn complete(&mut self, g: &GraphMetric, stage: usize) -> Result<(GraphMetric, usize, usize), BuildError> {
        let policy = ExtensionPolicy {
            seed: self.spec.seed.wrapping_add((stage as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            max_backtracks: self.spec.max_backtracks,
            prime_floor: self.prime_floor,
        };
        let ext = extend_to_full(g, &policy).map_err(|e| match e {
            GraphError::ExtensionExhausted { pair, backtracks } => BuildError::BuildExhausted { stage, pair, backtracks },
            e => e.into(),
        })?;
        for a in &ext.assignments {
            self.prime_floor = self.prime_floor.max(a.prime);
            self.generic.push(a.value.clone());
        }
        Ok((ext.full, ext.assignments.len(), ext.backtracks))
    }

    fn conditions(&self, f: &GraphMetric, stage: usize, active: usize) -> Result<(), BuildError> {
        check_two_point_symmetry(f, &self.classes, active)
            .map_err(|detail| BuildError::StageCondition { stage, condition: 7, detail })?;
        check_sphere_cap(f).map_err(|detail| BuildError::StageCondition { stage, condition: 8, detail })
    }

    fn copy_for(&mut self, f: &GraphMetric, set: &[usize], x: usize, class: usize) -> Result<GraphMetric, BuildError> {
        let cl = &self.classes[class];
        let cw = self.spec.copy_window.clone().unwrap_or_else(|| self.spec.window.clone());
        let other = set.iter().copied().find(|&z| z != x);
        let t = match other {
            Some(y) => cl.coord(f.edge(x, y).expect("full")).expect("in class"),
            None => Rat::zero(),
        };
        let mu = build_mu(&cl.monoid, &cl.radius, &cw.clone().max(t.clone()), self.spec.denom_bound)?;
        let k = self.copies;
        self.copies += 1;
        let Some(tpos) = mu.position(&t) else {
            return Err(BuildError::StageCondition {
                stage: self.stages.len(),
                condition: 10,
                detail: format!("sphere offset {t} is outside the copy window"),
            });
        };
        let zpos = mu.position(&Rat::zero()).expect("origin");
        let names: Vec<String> = (0..mu.coords.len())
            .map(|i| {
                if i == zpos {
                    f.name(x).to_string()
                } else if i == tpos && other.is_some() {
                    f.name(other.expect("checked")).to_string()
                } else {
                    format!("c{k}:{}", fmt_rat(&mu.coords[i]))
                }
            })
            .collect();
        let mut g = GraphMetric::with_vertices(&names)?;
        for (a, b, w) in mu.graph.edges() {
            g.set_edge(a, b, w.clone())?;
        }
        Ok(g)
    }
}

/// Builds a fragment in stages. Stage 0 completes a window of the canonical graph of the first
/// class. Each later stage finds every point whose sphere over an active class has at most one
/// other member, glues a window of that class's canonical graph onto the sphere and completes
/// the result with generic values.
pub fn build(spec: &BuildSpec) -> Result<(MetricFragment, Certificate), BuildError> {
    let classes = classes_of(spec)?;
    let prime_floor = classes.iter().flat_map(|c| c.radius.primes().collect::<Vec<_>>()).fold(1, u64::max);
    let mut run = Run { spec, classes, generic: vec![], prime_floor, stages: vec![], targets: vec![], copies: 0 };
    if run.classes.is_empty() {
        let f = GraphMetric::with_vertices(&["0"])?;
        return Ok(finish(&run, &f));
    }
    let mu0 = build_mu(&run.classes[0].monoid, &run.classes[0].radius, &spec.window, spec.denom_bound)?;
    let (mut f, assigned, backtracks) = run.complete(&mu0.graph, 0)?;
    run.conditions(&f, 0, 1)?;
    run.stages.push(StageReport {
        stage: 0,
        points: f.n(),
        targets: 0,
        copies: 0,
        assignments: assigned,
        backtracks,
        union_certified: None,
        monotone: contains_values(&mu0.graph, &f),
        two_point_symmetry: true,
        sphere_cap: true,
    });
    for stage in 1..spec.stages.max(1) {
        let active = (stage + 1).min(run.classes.len());
        let co = Coords::new(&f, &run.classes);
        let mut keys: BTreeMap<(Vec<usize>, usize), usize> = BTreeMap::new();
        let mut order = Vec::new();
        for x in 0..f.n() {
            for c in 0..active {
                let s = co.d_sphere(&run.classes, x, c);
                if s.len() <= 2 {
                    let key = (s.clone(), c);
                    if !keys.contains_key(&key) {
                        keys.insert(key, order.len());
                        order.push((s, c, x));
                    }
                }
            }
        }
        let first_copy = run.copies;
        let mut members = Vec::new();
        for (s, c, x) in &order {
            let g = run.copy_for(&f, s, *x, *c)?;
            members.push(UnionMember { graph: g, floppy: Some(true) });
        }
        for (k, (s, c, x)) in order.iter().enumerate() {
            run.targets.push(Target {
                stage,
                center: f.name(*x).to_string(),
                class: *c,
                members: s.iter().map(|&i| f.name(i).to_string()).collect(),
                copy: first_copy + k,
            });
        }
        let (g, certified) = if members.is_empty() {
            (f.clone(), None)
        } else {
            let rep = floppy_union(&f, &members)?;
            (rep.graph, Some(rep.floppy_certified))
        };
        let (next, assigned, backtracks) = run.complete(&g, stage)?;
        let monotone = contains_values(&f, &g) && contains_values(&g, &next);
        run.conditions(&next, stage, active)?;
        f = next;
        run.stages.push(StageReport {
            stage,
            points: f.n(),
            targets: order.len(),
            copies: order.len(),
            assignments: assigned,
            backtracks,
            union_certified: certified,
            monotone,
            two_point_symmetry: true,
            sphere_cap: true,
        });
    }
    Ok(finish(&run, &f))
}

fn finish(run: &Run<'_>, f: &GraphMetric) -> (MetricFragment, Certificate) {
    let frag = MetricFragment::from_graph(f).expect("completed graph is full");
    let realized: BTreeSet<Surd> = f.edges().map(|(_, _, w)| w.clone()).collect();
    let mut complete = Vec::new();
    let mut incomplete = 0;
    for x in 0..frag.n() {
        let mut by: BTreeMap<Surd, Vec<usize>> = BTreeMap::new();
        for z in 0..frag.n() {
            if z != x && run.classes.iter().any(|c| c.coord(frag.dist(x, z)).is_some()) {
                by.entry(frag.dist(x, z).clone()).or_default().push(z);
            }
        }
        for (r, m) in by {
            if m.len() == 2 {
                complete.push(SphereRecord {
                    center: frag.names()[x].clone(),
                    radius: r,
                    members: m.iter().map(|&i| frag.names()[i].clone()).collect(),
                });
            } else {
                incomplete += 1;
            }
        }
    }
    let cert = Certificate {
        classes: run.classes.iter().map(|c| BaseRadius { radius: c.radius.clone(), monoid: c.monoid.desc().clone() }).collect(),
        realized_distances: realized.into_iter().collect(),
        generic_values: run.generic.clone(),
        complete_spheres: complete,
        incomplete_spheres: incomplete,
        targets: run.targets.clone(),
        stages: run.stages.clone(),
    };
    (frag, cert)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertReport {
    pub checks: Vec<Check>,
}

impl CertReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

/// A witness `r` against floppiness of a finite set containing 0: `r` is not in the set but
/// the least `a + b` over pairs with `b - a = r` equals `r`.
pub fn floppy_window_witness(set: &[Rat]) -> Option<Rat> {
    let s: BTreeSet<&Rat> = set.iter().collect();
    let mut best: BTreeMap<Rat, Rat> = BTreeMap::new();
    for a in &s {
        for b in s.iter().filter(|b| *b >= a) {
            let r = *b - *a;
            let sum = *a + *b;
            best.entry(r).and_modify(|m| {
                if sum < *m {
                    *m = sum.clone()
                }
            })
            .or_insert(sum);
        }
    }
    best.into_iter().find(|(r, m)| r == m && !s.contains(r)).map(|(r, _)| r)
}

/// Rechecks a fragment against its spec and certificate without rerunning the build.
pub fn verify_certificate(frag: &MetricFragment, spec: &BuildSpec, cert: &Certificate) -> CertReport {
    let mut checks = Vec::new();
    let mut push = |name, ok: bool, detail: String| checks.push(Check { name, ok, detail });
    let rep = verify_fragment(frag);
    push("metric", rep.metric_ok, format!("{} violations", rep.violations.len()));
    push("two-point spheres", rep.banakh_consistent, format!("{} incomplete spheres", rep.incomplete_spheres.len()));

    let classes = match classes_of(spec) {
        Ok(c) => c,
        Err(e) => {
            push("classes", false, e.to_string());
            return CertReport { checks };
        }
    };
    let listed: Vec<BaseRadius> =
        classes.iter().map(|c| BaseRadius { radius: c.radius.clone(), monoid: c.monoid.desc().clone() }).collect();
    push("classes", listed == cert.classes, format!("{} classes", classes.len()));

    let n = frag.n();
    let mut realized = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            realized.insert(frag.dist(a, b).clone());
        }
    }
    let listed_realized: BTreeSet<Surd> = cert.realized_distances.iter().cloned().collect();
    push("realized distances", realized == listed_realized, format!("{} distinct values", realized.len()));

    let generic: HashSet<&Surd> = cert.generic_values.iter().collect();
    let stray: Vec<&Surd> = realized
        .iter()
        .filter(|d| !generic.contains(d) && !classes.iter().any(|c| c.coord(d).is_some_and(|q| c.monoid.contains(&q))))
        .collect();
    push("distance soundness", stray.is_empty(), format!("{} values outside the prescribed sets", stray.len()));

    let mut owners: HashMap<u64, usize> = HashMap::new();
    for v in &cert.generic_values {
        for p in v.primes() {
            *owners.entry(p).or_default() += 1;
        }
    }
    let base_primes: HashSet<u64> = classes.iter().flat_map(|c| c.radius.primes().collect::<Vec<_>>()).collect();
    let shared = cert
        .generic_values
        .iter()
        .filter(|v| !v.primes().any(|p| owners[&p] == 1 && !base_primes.contains(&p)))
        .count();
    let unrealized = cert.generic_values.iter().filter(|v| !realized.contains(*v)).count();
    push(
        "generic independence",
        shared == 0 && unrealized == 0,
        format!("{shared} values without a private prime, {unrealized} not realized"),
    );

    for (k, c) in classes.iter().enumerate() {
        let mut qs: Vec<Rat> = realized.iter().filter_map(|d| c.coord(d)).collect();
        qs.push(Rat::zero());
        qs.sort();
        qs.dedup();
        let outside: Vec<&Rat> = qs.iter().filter(|q| !c.monoid.contains(q)).collect();
        let top = qs.last().cloned().unwrap_or_else(Rat::zero);
        let set: BTreeSet<&Rat> = qs.iter().collect();
        let mut gaps = 0;
        for a in &qs {
            for b in &qs {
                let s = a + b;
                if s <= top && !set.contains(&s) {
                    gaps += 1;
                }
            }
        }
        push(
            "class window",
            outside.is_empty() && gaps == 0,
            format!("class {k}: {} values, {} outside the monoid, {gaps} sums missing", qs.len(), outside.len()),
        );
        let monoid_ok = matches!(is_floppy(&c.monoid, &SearchWindow::new(spec.window.clone(), spec.denom_bound)), FloppyVerdict::Floppy(_));
        let witness = floppy_window_witness(&qs);
        push(
            "class floppy",
            monoid_ok && witness.is_none(),
            match witness {
                Some(r) => format!("class {k}: window not floppy at {r}"),
                None => format!("class {k}: monoid floppy = {monoid_ok}"),
            },
        );
    }

    let index: HashMap<&str, usize> = frag.names().iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut bad_spheres = 0;
    for s in &cert.complete_spheres {
        let ok = index.get(s.center.as_str()).is_some_and(|&c| {
            let mut found: Vec<&str> =
                (0..n).filter(|&z| z != c && *frag.dist(c, z) == s.radius).map(|z| frag.names()[z].as_str()).collect();
            found.sort_unstable();
            let mut want: Vec<&str> = s.members.iter().map(String::as_str).collect();
            want.sort_unstable();
            found == want && want.len() == 2
        });
        if !ok {
            bad_spheres += 1;
        }
    }
    push("listed spheres", bad_spheres == 0, format!("{} listed, {bad_spheres} mismatched", cert.complete_spheres.len()));

    let cw = spec.copy_window.clone().unwrap_or_else(|| spec.window.clone());
    let mut short = Vec::new();
    for t in &cert.targets {
        let (Some(&x), Some(c)) = (index.get(t.center.as_str()), classes.get(t.class)) else {
            short.push(t.center.clone());
            continue;
        };
        for u in c.monoid.elements(&SearchWindow::new(cw.clone(), spec.denom_bound)) {
            if u.is_positive() {
                let r = c.radius.scale(&u);
                let size = (0..n).filter(|&z| *frag.dist(x, z) == r).count();
                if size != 2 {
                    short.push(format!("{} at {}", t.center, r));
                }
            }
        }
    }
    push("target spheres", short.is_empty(), format!("{} targets, {} short spheres", cert.targets.len(), short.len()));

    let stages_ok = cert.stages.iter().all(|s| s.monotone && s.two_point_symmetry && s.sphere_cap);
    let count_ok = cert.stages.len() == spec.stages.max(1) || classes.is_empty();
    let size_ok = cert.stages.last().is_none_or(|s| s.points == n);
    push("stage checklist", stages_ok && count_ok && size_ok, format!("{} stages", cert.stages.len()));
    CertReport { checks }
}
