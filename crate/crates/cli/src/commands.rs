use std::fs;

use serde_json::{json, Value};

use banakh::builder::{self, BuildError};
use banakh::graph::{self, GraphError, GraphMetric};
use banakh::group::{self, GroupElement, Lattice};
use banakh::io::{self, FormatError};
use banakh::monoid::{self, FloppyVerdict, HalfGroupVerdict, Monoid, MonoidDesc, SearchWindow};
use banakh::rat::{fmt_rat, parse_rat, Rat};
use banakh::space::{self, Embedding, FragmentOracle, GeoError, MetricFragment, Orientation};
use banakh::Surd;

use crate::{GroupOp, LatticeArg, MonoidArg, SegmentMode, WindowArg};

pub struct Outcome {
    pub code: u8,
    pub json: Value,
    pub human: String,
    pub dot: Option<String>,
}

impl Outcome {
    fn new(ok: bool, json: Value, human: String) -> Self {
        Outcome { code: if ok { 0 } else { 1 }, json, human, dot: None }
    }

    fn undecided(json: Value, human: String) -> Self {
        Outcome { code: 3, json, human, dot: None }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: 2, msg: msg.into() }
}

fn read_json(path: &str) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    io::parse_json(&text).map_err(|e| format_err(path, e))
}

fn format_err(path: &str, e: FormatError) -> CliError {
    usage(format!("{path}: {e}"))
}

fn write_out(path: &str, v: &Value) -> Result<(), CliError> {
    fs::write(path, io::to_text(v)).map_err(|e| usage(format!("cannot write {path}: {e}")))
}

fn rat_arg(name: &str, s: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(|e| usage(format!("--{name}: {e}")))
}

fn surd_arg(name: &str, s: &str) -> Result<Surd, CliError> {
    match parse_rat(s) {
        Ok(q) => Ok(Surd::from_rat(q)),
        Err(_) => Surd::parse(s).map_err(|e| usage(format!("--{name}: {e}"))),
    }
}

fn monoid_of(arg: &MonoidArg) -> Result<Monoid, CliError> {
    let desc = match (&arg.monoid, &arg.gens) {
        (Some(m), _) if m.trim_start().starts_with('{') => {
            let v = io::parse_json(m).map_err(|e| format_err("--monoid", e))?;
            io::monoid_from(&v, "$").map_err(|e| format_err("--monoid", e))?
        }
        (Some(m), _) => MonoidDesc::named(m).map_err(|e| usage(format!("--monoid: {e}")))?,
        (None, Some(g)) => {
            let gens = g.iter().map(|s| rat_arg("gens", s)).collect::<Result<Vec<_>, _>>()?;
            MonoidDesc::FinGen { generators: gens }
        }
        (None, None) => return Err(usage("give --monoid or --gens")),
    };
    Monoid::new(desc).map_err(|e| usage(e.to_string()))
}

/// Explicit window, or one reaching past the conductor so that discrete verdicts are complete.
fn window_of(w: &WindowArg, m: &Monoid) -> Result<SearchWindow, CliError> {
    let bound = match &w.window {
        Some(s) => rat_arg("window", s)?,
        None => {
            let base = Rat::from_integer(10.into());
            match (m.conductor(), m.unit()) {
                (Some(c), Some(u)) => std::cmp::max(base, c + u),
                _ => base,
            }
        }
    };
    Ok(SearchWindow::new(bound, w.denom))
}

fn rats(xs: &[Rat]) -> Vec<Value> {
    xs.iter().map(io::rat_to).collect()
}

fn fragment_file(path: &str) -> Result<MetricFragment, CliError> {
    io::fragment_from(&read_json(path)?).map_err(|e| format_err(path, e))
}

fn graph_file(path: &str) -> Result<GraphMetric, CliError> {
    io::graph_from(&read_json(path)?).map_err(|e| format_err(path, e))
}

fn point(f: &MetricFragment, name: &str) -> Result<usize, CliError> {
    f.index(name).ok_or_else(|| usage(format!("no point `{name}` in the fragment")))
}

fn pair_names(g: &GraphMetric, (u, v): (usize, usize)) -> Value {
    json!([g.name(u), g.name(v)])
}

pub fn verify(path: &str) -> Result<Outcome, CliError> {
    let v = read_json(path)?;
    if v.get("vertices").is_some() {
        let g = io::graph_from(&v).map_err(|e| format_err(path, e))?;
        return match graph::validate_pseudometric(&g) {
            Ok(val) => {
                let json = json!({
                    "kind": "graph",
                    "ok": val.ok,
                    "full": g.is_full(),
                    "violating_edge": val.violating_edge.map(|p| pair_names(&g, p)),
                });
                let human = match val.violating_edge {
                    None => format!("graph metric on {} vertices, {} edges", g.n(), g.edge_count()),
                    Some((a, b)) => format!("edge {}-{} is longer than a path between its ends", g.name(a), g.name(b)),
                };
                Ok(Outcome::new(val.ok, json, human))
            }
            Err(e) => Ok(Outcome::new(false, json!({"kind": "graph", "ok": false, "error": e.to_string()}), e.to_string())),
        };
    }
    let f = io::fragment_from(&v).map_err(|e| format_err(path, e))?;
    let r = space::verify_fragment(&f);
    let name = |i: usize| f.names()[i].clone();
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|x| match x {
            space::Violation::NonPositive { a, b } => json!({"non_positive": [name(*a), name(*b)]}),
            space::Violation::Triangle { a, b, c } => json!({"triangle": [name(*a), name(*b), name(*c)]}),
            space::Violation::SphereTooLarge { center, radius, members } => json!({
                "sphere_too_large": {"center": name(*center), "radius": io::surd_to(radius), "members": members.iter().map(|m| name(*m)).collect::<Vec<_>>()}
            }),
            space::Violation::DiameterLaw { center, radius, pair } => json!({
                "diameter_law": {"center": name(*center), "radius": io::surd_to(radius), "pair": [name(pair.0), name(pair.1)]}
            }),
        })
        .collect();
    let ok = r.metric_ok && r.banakh_consistent;
    let json = json!({
        "kind": "fragment",
        "ok": ok,
        "metric": r.metric_ok,
        "banakh_consistent": r.banakh_consistent,
        "incomplete_spheres": r.incomplete_spheres.len(),
        "violations": violations,
    });
    let human = if ok {
        format!(
            "metric fragment on {} points; every complete sphere has two points at twice the radius ({} spheres cut by the window)",
            f.n(),
            r.incomplete_spheres.len()
        )
    } else {
        format!("{} violations; first: {}", violations.len(), violations[0])
    };
    Ok(Outcome::new(ok, json, human))
}

pub fn embed(path: &str) -> Result<Outcome, CliError> {
    let f = fragment_file(path)?;
    let e = space::embed_in_real_line(&f);
    let json = io::embedding_to(&f, &e);
    Ok(match &e {
        Embedding::Coords(c) => {
            let parts: Vec<String> = f.names().iter().zip(c).map(|(n, x)| format!("{n} -> {x}")).collect();
            Outcome::new(true, json, parts.join("\n"))
        }
        Embedding::Obstruction(ix) => {
            let names: Vec<&str> = ix.iter().map(|&i| f.names()[i].as_str()).collect();
            Outcome::new(false, json, format!("no isometric copy on the line: {} do not fit", names.join(", ")))
        }
    })
}

pub fn halfgroup(m: &MonoidArg, w: &WindowArg) -> Result<Outcome, CliError> {
    let mm = monoid_of(m)?;
    let win = window_of(w, &mm)?;
    Ok(match monoid::is_half_group(&mm, &win).map_err(|e| usage(e.to_string()))? {
        HalfGroupVerdict::HalfGroup => Outcome::new(true, json!({"half_group": true}), "M and -M together form a group".into()),
        HalfGroupVerdict::NotHalfGroup { a, b, gap } => {
            let witness = match (&a, &b) {
                (Some(a), Some(b)) => format!("{} = {}-{} not in M", fmt_rat(&gap), fmt_rat(b), fmt_rat(a)),
                _ => format!("{} in M-M not in M", fmt_rat(&gap)),
            };
            let json = json!({
                "half_group": false,
                "witness": witness,
                "gap": io::rat_to(&gap),
                "a": a.as_ref().map(io::rat_to),
                "b": b.as_ref().map(io::rat_to),
            });
            Outcome::new(false, json, format!("not a half-group: {witness}"))
        }
        HalfGroupVerdict::Inconclusive(why) => {
            Outcome::undecided(json!({"half_group": null, "reason": why}), format!("undecided: {why}"))
        }
    })
}

pub fn floppy(m: &MonoidArg, w: &WindowArg, graph_path: Option<&str>) -> Result<Outcome, CliError> {
    if let Some(p) = graph_path {
        let g = graph_file(p)?;
        let v = graph::is_floppy_graph(&g);
        return Ok(match v.witness {
            None => Outcome::new(true, json!({"floppy": true}), "check < hat at every missing pair".into()),
            Some((x, y)) => {
                let c = graph::check(&g, x, y);
                let h = graph::hat(&g, x, y);
                let json = json!({
                    "floppy": false,
                    "witness": {"pair": pair_names(&g, (x, y)), "check": io::surd_to(&c), "hat": h.as_ref().map(io::surd_to)},
                });
                let hs = h.map(|h| h.to_string()).unwrap_or_else(|| "unbounded".into());
                Outcome::new(false, json, format!("not floppy at {}-{}: check {c} = hat {hs}", g.name(x), g.name(y)))
            }
        });
    }
    let mm = monoid_of(m)?;
    let win = window_of(w, &mm)?;
    Ok(match monoid::is_floppy(&mm, &win) {
        FloppyVerdict::Floppy(reason) => {
            let why = match reason {
                monoid::FloppyReason::DiscreteInfimum => "nonzero elements are bounded away from zero",
                monoid::FloppyReason::HalfGroup => "every positive difference is already in M",
            };
            Outcome::new(true, json!({"floppy": true, "reason": why}), format!("floppy: {why}"))
        }
        FloppyVerdict::NonFloppy { r } => {
            let json = json!({"floppy": false, "witness": {"r": io::rat_to(&r), "inf": io::rat_to(&r)}});
            Outcome::new(false, json, format!("not floppy: {r} is not in M, yet inf {{a+b : a, b in M, b-a = {r}}} = {r}"))
        }
        FloppyVerdict::Inconclusive(why) => Outcome::undecided(json!({"floppy": null, "reason": why}), format!("undecided: {why}")),
    })
}

pub fn ddot(m: &MonoidArg, w: &WindowArg) -> Result<Outcome, CliError> {
    let mm = monoid_of(m)?;
    let win = window_of(w, &mm)?;
    let set = monoid::ddot_set(&mm, &win);
    let shown: Vec<String> = set.iter().map(fmt_rat).collect();
    let human = format!("{{{}}}", shown.join(", "));
    Ok(Outcome::new(true, json!({"ddot": rats(&set), "window": io::rat_to(&win.bound)}), human))
}

pub fn dzik(a: u64, b: u64, p: u64, m: &MonoidArg) -> Result<Outcome, CliError> {
    let mm = if m.monoid.is_none() && m.gens.is_none() { Monoid::fingen(&[1]) } else { monoid_of(m)? };
    let member = |x: u64| mm.contains(&Rat::from_integer(x.into()));
    match monoid::dzik_reduce(a, b, p, member) {
        Ok(t) => {
            let trace: Vec<Value> = t.trace.iter().map(|(x, y)| json!([x, y])).collect();
            let steps: Vec<String> = t.trace.iter().map(|(x, y)| format!("({x}, {y})")).collect();
            Ok(Outcome::new(true, json!({"value": t.value, "trace": trace}), format!("{} via {}", t.value, steps.join(" -> "))))
        }
        Err(monoid::DzikError::NotMember(x)) => {
            Ok(Outcome::new(false, json!({"value": null, "witness": {"not_in_m": x}}), format!("{x} is not in M")))
        }
        Err(e) => Err(usage(e.to_string())),
    }
}

pub fn mu(m: &MonoidArg, window: &str, scale: &str, denom: u64) -> Result<Outcome, CliError> {
    let mm = monoid_of(m)?;
    let w = rat_arg("window", window)?;
    let s = surd_arg("scale", scale)?;
    let g = graph::build_mu(&mm, &s, &w, denom).map_err(|e| usage(e.to_string()))?;
    let human = format!("{} vertices, {} edges", g.graph.n(), g.graph.edge_count());
    let mut out = Outcome::new(true, io::graph_to(&g.graph), human);
    out.dot = Some(io::graph_dot(&g.graph));
    Ok(out)
}

pub fn extend(path: &str, seed: u64, max_backtracks: usize, prime_floor: u64, out: Option<&str>) -> Result<Outcome, CliError> {
    let g = graph_file(path)?;
    let policy = graph::ExtensionPolicy { seed, max_backtracks, prime_floor };
    match graph::extend_to_full(&g, &policy) {
        Ok(ext) => {
            let assignments: Vec<Value> = ext
                .assignments
                .iter()
                .map(|a| {
                    json!({
                        "pair": pair_names(&ext.full, a.pair),
                        "value": io::surd_to(&a.value),
                        "lower": io::surd_to(&a.lower),
                        "upper": io::surd_to(&a.upper),
                    })
                })
                .collect();
            let mut json = io::graph_to(&ext.full);
            let human = format!("{} new values, {} backtracks", assignments.len(), ext.backtracks);
            if let Some(o) = out {
                write_out(o, &json)?;
                json = json!({"out": o, "assignments": assignments, "backtracks": ext.backtracks});
            } else {
                json["assignments"] = Value::Array(assignments);
                json["backtracks"] = json!(ext.backtracks);
            }
            let mut res = Outcome::new(true, json, human);
            res.dot = Some(io::graph_dot(&ext.full));
            Ok(res)
        }
        Err(GraphError::ExtensionExhausted { pair, backtracks }) => Ok(Outcome::new(
            false,
            json!({"extended": false, "witness": {"pair": [pair.0, pair.1], "backtracks": backtracks}}),
            format!("no room for a value at {}-{} after {backtracks} backtracks", pair.0, pair.1),
        )),
        Err(e @ (GraphError::NotAGraphMetric(..) | GraphError::Disconnected)) => {
            Ok(Outcome::new(false, json!({"extended": false, "error": e.to_string()}), e.to_string()))
        }
        Err(e) => Err(usage(e.to_string())),
    }
}

/// Geometry failures: a missing sphere member in a finite window leaves the question open,
/// a broken two-point law is a false verdict.
fn geo_failure(e: GeoError, f: &MetricFragment) -> Result<Outcome, CliError> {
    let rename = |s: &str| s.parse::<usize>().ok().and_then(|i| f.names().get(i).cloned()).unwrap_or_else(|| s.to_string());
    match e {
        GeoError::Incomplete { center, radius } => {
            let c = rename(&center);
            Ok(Outcome::undecided(
                json!({"result": null, "reason": "window", "center": c, "radius": radius}),
                format!("the window does not contain the sphere around {c} of radius {radius}"),
            ))
        }
        GeoError::NoSuchRadius { center, radius } => {
            let c = rename(&center);
            Ok(Outcome::new(
                false,
                json!({"result": null, "witness": {"empty_sphere": {"center": c, "radius": radius}}}),
                format!("no point at distance {radius} from {c}"),
            ))
        }
        GeoError::BanakhViolation(d) => {
            Ok(Outcome::new(false, json!({"result": null, "witness": {"banakh_violation": d}}), format!("two-point law fails: {d}")))
        }
        GeoError::Precondition(d) => Err(usage(d)),
    }
}

pub fn line(path: &str, a: &str, b: &str, n: usize) -> Result<Outcome, CliError> {
    let f = fragment_file(path)?;
    let (ia, ib) = (point(&f, a)?, point(&f, b)?);
    let o = FragmentOracle::new(f.clone());
    match space::discrete_line(&o, &ia, &ib, n) {
        Ok(pts) => {
            let names: Vec<&str> = pts.iter().map(|&i| f.names()[i].as_str()).collect();
            let human = names.iter().enumerate().map(|(k, p)| format!("{}: {p}", k as i64 - n as i64)).collect::<Vec<_>>().join("\n");
            Ok(Outcome::new(true, json!({"line": names, "from": -(n as i64), "to": n}), human))
        }
        Err(e) => geo_failure(e, &f),
    }
}

pub fn gps(path: &str, a: &str, b: &str, ra: &str, rb: &str) -> Result<Outcome, CliError> {
    let f = fragment_file(path)?;
    let (ia, ib) = (point(&f, a)?, point(&f, b)?);
    let (ra, rb) = (surd_arg("ra", ra)?, surd_arg("rb", rb)?);
    let o = FragmentOracle::new(f.clone());
    match space::gps_locate(&o, &ia, &ib, &ra, &rb) {
        Ok(Some(p)) => {
            let name = &f.names()[p];
            Ok(Outcome::new(true, json!({"point": name}), format!("the unique point is {name}")))
        }
        Ok(None) => Ok(Outcome::undecided(json!({"point": null}), "no such point inside the window".into())),
        Err(e) => geo_failure(e, &f),
    }
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::Parallel => "parallel",
        Orientation::Antiparallel => "antiparallel",
        Orientation::Incomparable => "incomparable",
    }
}

pub fn orient(path: &str, origin: &str, x: &str, y: &str) -> Result<Outcome, CliError> {
    let f = fragment_file(path)?;
    let (io_, ix, iy) = (point(&f, origin)?, point(&f, x)?, point(&f, y)?);
    let o = FragmentOracle::new(f.clone());
    match space::orientation(&o, &io_, &ix, &iy) {
        Ok(r) => {
            let name = orientation_name(r);
            Ok(Outcome::new(true, json!({"orientation": name}), format!("{x} and {y} are {name} as seen from {origin}")))
        }
        Err(e) => geo_failure(e, &f),
    }
}

pub fn segment(
    path: &str,
    mode: SegmentMode,
    x: &str,
    y: &str,
    r: Option<&str>,
    a: Option<&str>,
    b: Option<&str>,
) -> Result<Outcome, CliError> {
    let f = fragment_file(path)?;
    let (ix, iy) = (point(&f, x)?, point(&f, y)?);
    let o = FragmentOracle::new(f.clone());
    let res = match mode {
        SegmentMode::Extend => space::segment_construct(&o, &ix, &iy, &surd_arg("r", need("r", r)?)?),
        SegmentMode::Directed => space::directed_point(&o, &ix, &iy, &surd_arg("r", need("r", r)?)?),
        SegmentMode::Split => {
            space::split_segment(&o, &ix, &iy, &surd_arg("a", need("a", a)?)?, &surd_arg("b", need("b", b)?)?)
        }
    };
    match res {
        Ok(p) => {
            let name = &f.names()[p];
            Ok(Outcome::new(true, json!({"point": name}), format!("the point is {name}")))
        }
        Err(e) => geo_failure(e, &f),
    }
}

fn need<'a>(name: &str, v: Option<&'a str>) -> Result<&'a str, CliError> {
    v.ok_or_else(|| usage(format!("--{name} is required in this mode")))
}

fn element(s: &str) -> Result<GroupElement, CliError> {
    if s.trim_start().starts_with('{') {
        let v = io::parse_json(s).map_err(|e| format_err("element", e))?;
        return io::element_from(&v, "$").map_err(|e| format_err("element", e));
    }
    s.parse().map_err(|e: group::GroupError| usage(e.to_string()))
}

fn lattice(l: LatticeArg) -> Lattice {
    match l {
        LatticeArg::H => Lattice::H,
        LatticeArg::L => Lattice::L,
    }
}

fn element_outcome(x: &GroupElement) -> Outcome {
    Outcome::new(true, io::element_to(x), x.to_string())
}

pub fn group(op: &GroupOp) -> Result<Outcome, CliError> {
    Ok(match op {
        GroupOp::Add { x, y } => element_outcome(&element(x)?.add(&element(y)?)),
        GroupOp::Sub { x, y } => element_outcome(&element(x)?.sub(&element(y)?)),
        GroupOp::Neg { x } => element_outcome(&element(x)?.neg()),
        GroupOp::Scale { x, q, lattice: l } => {
            let q = rat_arg("q", q)?;
            match element(x)?.scale(&q, lattice(*l)) {
                Ok(v) => element_outcome(&v),
                Err(e) => Outcome::new(false, json!({"witness": e.to_string()}), e.to_string()),
            }
        }
        GroupOp::NormEqual { x, y } => {
            let (a, b) = (element(x)?, element(y)?);
            let eq = group::norm_equal(&a, &b);
            let human = if eq { format!("||{a}|| = ||{b}||") } else { format!("||{a}|| != ||{b}||: {a} != ±{b}") };
            Outcome::new(eq, json!({"norm_equal": eq}), human)
        }
        GroupOp::Dist { x, y } => {
            let t = group::dist_token(&element(x)?, &element(y)?);
            Outcome::new(true, io::token_to(&t), t.to_string())
        }
        GroupOp::Sphere { c, t } => {
            let c = element(c)?;
            let t = group::DistToken::of(&element(t)?);
            let pts = group::sphere(&c, &t);
            let human = pts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
            Outcome::new(true, json!({"sphere": pts.iter().map(io::element_to).collect::<Vec<_>>()}), human)
        }
        GroupOp::Divisible { x, p, lattice: l } => {
            if !banakh::rat::is_prime(*p) {
                return Err(usage(format!("--p: {p} is not a prime")));
            }
            let x = element(x)?;
            let d = group::is_p_divisible_elem(&x, *p, lattice(*l));
            Outcome::new(d, json!({"divisible": d}), format!("{x} is {}divisible by {p}", if d { "" } else { "not " }))
        }
        GroupOp::Norm { x, seed } => {
            let x = element(x)?;
            let v = group::numeric_norm(&x, *seed);
            Outcome::new(true, json!({"norm": v}), format!("{v}"))
        }
    })
}

pub fn build(spec_path: &str, seed: u64, out: Option<&str>) -> Result<Outcome, CliError> {
    let mut spec = io::spec_from(&read_json(spec_path)?).map_err(|e| format_err(spec_path, e))?;
    spec.seed = seed;
    match builder::build(&spec) {
        Ok((f, cert)) => {
            let full = io::build_output_to(&f, &cert);
            let human = format!(
                "{} points, {} distances, {} complete spheres, {} cut by the window",
                f.n(),
                cert.realized_distances.len(),
                cert.complete_spheres.len(),
                cert.incomplete_spheres
            );
            let json = match out {
                Some(o) => {
                    write_out(o, &full)?;
                    json!({"out": o, "points": f.n(), "stages": cert.stages.len()})
                }
                None => full,
            };
            let mut res = Outcome::new(true, json, human);
            res.dot = Some(io::fragment_dot(&f));
            Ok(res)
        }
        Err(BuildError::SpecRejected(why)) => Err(usage(format!("{spec_path}: spec rejected: {why}"))),
        Err(e) => Ok(Outcome::new(false, json!({"built": false, "witness": e.to_string()}), e.to_string())),
    }
}

pub fn certify(frag_path: &str, spec_path: &str) -> Result<Outcome, CliError> {
    let (f, cert) = io::build_output_from(&read_json(frag_path)?).map_err(|e| format_err(frag_path, e))?;
    let cert = cert.ok_or_else(|| usage(format!("{frag_path}: missing field `certificate`")))?;
    let spec = io::spec_from(&read_json(spec_path)?).map_err(|e| format_err(spec_path, e))?;
    let report = builder::verify_certificate(&f, &spec, &cert);
    let checks: Vec<Value> = report.checks.iter().map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail})).collect();
    let human = if report.ok() {
        format!("all {} checks pass", report.checks.len())
    } else {
        report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("\n")
    };
    Ok(Outcome::new(report.ok(), json!({"certified": report.ok(), "checks": checks}), human))
}
