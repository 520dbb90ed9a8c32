//! JSON formats for monoids, graphs, fragments, group elements, build specs and certificates.
//! Readers report the JSON path of the offending field.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::builder::{BaseRadius, BuildSpec, Certificate, SphereRecord, StageReport, Target};
use crate::graph::GraphMetric;
use crate::group::{DistToken, GroupElement};
use crate::monoid::{ClosureId, MonoidDesc};
use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::space::{Embedding, MetricFragment};
use crate::surd::Surd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("at {path}: {msg}")]
    Field { path: String, msg: String },
}

fn field(path: &str, msg: impl Into<String>) -> FormatError {
    FormatError::Field { path: path.to_string(), msg: msg.into() }
}

pub fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Syntax { line: e.line(), column: e.column(), msg: e.to_string() })
}

/// Pretty JSON with a trailing newline. Object keys come out sorted.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object().ok_or_else(|| field(path, "expected an object"))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, FormatError> {
    v.as_array().ok_or_else(|| field(path, "expected an array"))
}

fn get<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, FormatError> {
    o.get(key).ok_or_else(|| field(path, format!("missing field `{key}`")))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, FormatError> {
    v.as_str().ok_or_else(|| field(path, "expected a string"))
}

fn uint(v: &Value, path: &str) -> Result<u64, FormatError> {
    v.as_u64().ok_or_else(|| field(path, "expected a nonnegative integer"))
}

fn boolean(v: &Value, path: &str) -> Result<bool, FormatError> {
    v.as_bool().ok_or_else(|| field(path, "expected a boolean"))
}

fn strings(v: &Value, path: &str) -> Result<Vec<String>, FormatError> {
    arr(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x, &format!("{path}[{i}]")).map(str::to_string))
        .collect()
}

fn sub(path: &str, key: &str) -> String {
    format!("{path}.{key}")
}

pub fn rat_from(v: &Value, path: &str) -> Result<Rat, FormatError> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|e| field(path, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(crate::rat::int(n.as_i64().expect("i64"))),
        _ => Err(field(path, "expected a rational string \"p/q\"")),
    }
}

pub fn rat_to(q: &Rat) -> Value {
    Value::String(fmt_rat(q))
}

/// `"p/q"`, an integer, a surd expression such as `"1 + sqrt(2)"`, or
/// `{"rat": "p/q", "surds": {"2": "p/q"}}`.
pub fn surd_from(v: &Value, path: &str) -> Result<Surd, FormatError> {
    match v {
        Value::String(s) => {
            if let Ok(q) = parse_rat(s) {
                return Ok(Surd::from_rat(q));
            }
            Surd::parse(s).map_err(|e| field(path, e.to_string()))
        }
        Value::Number(_) => rat_from(v, path).map(Surd::from_rat),
        Value::Object(o) => {
            let q0 = match o.get("rat") {
                Some(r) => rat_from(r, &sub(path, "rat"))?,
                None => Rat::from_integer(0.into()),
            };
            let mut terms = Vec::new();
            if let Some(s) = o.get("surds") {
                let sp = sub(path, "surds");
                for (k, c) in obj(s, &sp)? {
                    let kp = format!("{sp}.{k}");
                    let p: u64 = k.parse().map_err(|_| field(&kp, "surd key must be a prime"))?;
                    terms.push((p, rat_from(c, &kp)?));
                }
            }
            for k in o.keys() {
                if k != "rat" && k != "surds" {
                    return Err(field(path, format!("unknown field `{k}`")));
                }
            }
            Surd::new(q0, terms).map_err(|e| field(path, e.to_string()))
        }
        _ => Err(field(path, "expected a rational string or a surd object")),
    }
}

pub fn surd_to(s: &Surd) -> Value {
    if let Some(q) = s.as_rat() {
        return rat_to(q);
    }
    let surds: Map<String, Value> = s.terms().iter().map(|(p, c)| (p.to_string(), rat_to(c))).collect();
    json!({"rat": rat_to(s.rational_part()), "surds": surds})
}

/// Object form, or a bare string naming a built-in monoid.
pub fn monoid_from(v: &Value, path: &str) -> Result<MonoidDesc, FormatError> {
    if let Some(name) = v.as_str() {
        return MonoidDesc::named(name).map_err(|e| field(path, e.to_string()));
    }
    let o = obj(v, path)?;
    let variant = string(get(o, "variant", path)?, &sub(path, "variant"))?;
    let gens = |o: &Map<String, Value>| -> Result<Vec<Rat>, FormatError> {
        let gp = sub(path, "generators");
        arr(get(o, "generators", path)?, &gp)?
            .iter()
            .enumerate()
            .map(|(i, g)| rat_from(g, &format!("{gp}[{i}]")))
            .collect()
    };
    match variant {
        "fingen" => Ok(MonoidDesc::FinGen { generators: gens(o)? }),
        "groupcone" => {
            let mut inverted = Vec::new();
            if let Some(p) = o.get("params") {
                let pp = sub(path, "params");
                if let Some(inv) = obj(p, &pp)?.get("inverted") {
                    let ip = sub(&pp, "inverted");
                    for (i, x) in arr(inv, &ip)?.iter().enumerate() {
                        inverted.push(uint(x, &format!("{ip}[{i}]"))?);
                    }
                }
            }
            Ok(MonoidDesc::GroupCone { generators: gens(o)?, inverted })
        }
        "closure" => {
            let cp = sub(path, "closure_id");
            let id = string(get(o, "closure_id", path)?, &cp)?;
            ClosureId::from_name(id).map(|id| MonoidDesc::Closure { id }).ok_or_else(|| field(&cp, format!("unknown closure `{id}`")))
        }
        other => Err(field(&sub(path, "variant"), format!("unknown variant `{other}`"))),
    }
}

pub fn monoid_to(d: &MonoidDesc) -> Value {
    match d {
        MonoidDesc::FinGen { generators } => {
            json!({"variant": "fingen", "generators": generators.iter().map(rat_to).collect::<Vec<_>>()})
        }
        MonoidDesc::GroupCone { generators, inverted } => json!({
            "variant": "groupcone",
            "generators": generators.iter().map(rat_to).collect::<Vec<_>>(),
            "params": {"inverted": inverted},
        }),
        MonoidDesc::Closure { id } => json!({"variant": "closure", "generators": [], "closure_id": id.name()}),
    }
}

pub fn graph_from(v: &Value) -> Result<GraphMetric, FormatError> {
    let o = obj(v, "$")?;
    let names = strings(get(o, "vertices", "$")?, "$.vertices")?;
    let mut g = GraphMetric::with_vertices(&names).map_err(|e| field("$.vertices", e.to_string()))?;
    for (i, e) in arr(get(o, "edges", "$")?, "$.edges")?.iter().enumerate() {
        let ep = format!("$.edges[{i}]");
        let t = arr(e, &ep)?;
        if t.len() != 3 {
            return Err(field(&ep, "expected [u, v, value]"));
        }
        let u = string(&t[0], &format!("{ep}[0]"))?;
        let w = string(&t[1], &format!("{ep}[1]"))?;
        let d = surd_from(&t[2], &format!("{ep}[2]"))?;
        g.set_edge_named(u, w, d).map_err(|e| field(&ep, e.to_string()))?;
    }
    Ok(g)
}

pub fn graph_to(g: &GraphMetric) -> Value {
    let edges: Vec<Value> = g.edges().map(|(u, v, d)| json!([g.name(u), g.name(v), surd_to(d)])).collect();
    json!({"vertices": g.names(), "edges": edges})
}

/// Graphviz description of a graph, edges labelled by their values.
pub fn graph_dot(g: &GraphMetric) -> String {
    let mut s = String::from("graph G {\n");
    for n in g.names() {
        s.push_str(&format!("  \"{n}\";\n"));
    }
    for (u, v, d) in g.edges() {
        s.push_str(&format!("  \"{}\" -- \"{}\" [label=\"{d}\"];\n", g.name(u), g.name(v)));
    }
    s.push_str("}\n");
    s
}

pub fn fragment_from(v: &Value) -> Result<MetricFragment, FormatError> {
    let o = obj(v, "$")?;
    let names = strings(get(o, "points", "$")?, "$.points")?;
    let mut entries = Vec::new();
    for (k, e) in arr(get(o, "dist", "$")?, "$.dist")?.iter().enumerate() {
        let ep = format!("$.dist[{k}]");
        let t = arr(e, &ep)?;
        if t.len() != 3 {
            return Err(field(&ep, "expected [i, j, value]"));
        }
        let i = uint(&t[0], &format!("{ep}[0]"))? as usize;
        let j = uint(&t[1], &format!("{ep}[1]"))? as usize;
        entries.push((i, j, surd_from(&t[2], &format!("{ep}[2]"))?));
    }
    MetricFragment::from_entries(names, entries).map_err(|e| field("$.dist", e.to_string()))
}

pub fn fragment_to(f: &MetricFragment) -> Value {
    let mut dist = Vec::new();
    for i in 0..f.n() {
        for j in i + 1..f.n() {
            dist.push(json!([i, j, surd_to(f.dist(i, j))]));
        }
    }
    json!({"points": f.names(), "dist": dist})
}

pub fn fragment_dot(f: &MetricFragment) -> String {
    let mut s = String::from("graph F {\n");
    for n in f.names() {
        s.push_str(&format!("  \"{n}\";\n"));
    }
    for i in 0..f.n() {
        for j in i + 1..f.n() {
            s.push_str(&format!("  \"{}\" -- \"{}\" [label=\"{}\"];\n", f.names()[i], f.names()[j], f.dist(i, j)));
        }
    }
    s.push_str("}\n");
    s
}

pub fn embedding_to(f: &MetricFragment, e: &Embedding) -> Value {
    match e {
        Embedding::Coords(c) => {
            let m: Map<String, Value> = f.names().iter().zip(c).map(|(n, x)| (n.clone(), surd_to(x))).collect();
            json!({"coords": m})
        }
        Embedding::Obstruction(ix) => json!({"obstruction": ix.iter().map(|&i| f.names()[i].clone()).collect::<Vec<_>>()}),
    }
}

/// `{"coeffs": {"3": "1/2"}}` or the compact text form `"1/2e3"`.
pub fn element_from(v: &Value, path: &str) -> Result<GroupElement, FormatError> {
    if let Some(s) = v.as_str() {
        return s.parse().map_err(|e: crate::group::GroupError| field(path, e.to_string()));
    }
    let o = obj(v, path)?;
    let cp = sub(path, "coeffs");
    let mut out = Vec::new();
    for (k, c) in obj(get(o, "coeffs", path)?, &cp)? {
        let kp = format!("{cp}.{k}");
        let i: u32 = k.trim_start_matches('e').parse().map_err(|_| field(&kp, "coordinate key must be an index"))?;
        out.push((i, rat_from(c, &kp)?));
    }
    Ok(GroupElement::from_coeffs(out))
}

pub fn element_to(x: &GroupElement) -> Value {
    let m: Map<String, Value> = x.coeffs().iter().map(|(i, c)| (i.to_string(), rat_to(c))).collect();
    json!({"coeffs": m})
}

pub fn token_to(t: &DistToken) -> Value {
    let mut v = element_to(t.rep());
    v["sign_normalized"] = Value::Bool(true);
    v
}

pub fn spec_from(v: &Value) -> Result<BuildSpec, FormatError> {
    let o = obj(v, "$")?;
    let mut radii = Vec::new();
    for (i, r) in arr(get(o, "radii", "$")?, "$.radii")?.iter().enumerate() {
        let rp = format!("$.radii[{i}]");
        let ro = obj(r, &rp)?;
        radii.push(BaseRadius {
            radius: surd_from(get(ro, "r", &rp)?, &sub(&rp, "r"))?,
            monoid: monoid_from(get(ro, "monoid", &rp)?, &sub(&rp, "monoid"))?,
        });
    }
    let stages = uint(get(o, "stages", "$")?, "$.stages")? as usize;
    let window = rat_from(get(o, "window", "$")?, "$.window")?;
    let seed = uint(get(o, "seed", "$")?, "$.seed")?;
    let mut spec = BuildSpec::new(radii, stages, window, seed);
    if let Some(d) = o.get("denom_bound") {
        spec.denom_bound = uint(d, "$.denom_bound")?;
    }
    if let Some(c) = o.get("copy_window").filter(|c| !c.is_null()) {
        spec.copy_window = Some(rat_from(c, "$.copy_window")?);
    }
    if let Some(b) = o.get("max_backtracks") {
        spec.max_backtracks = uint(b, "$.max_backtracks")? as usize;
    }
    Ok(spec)
}

fn base_to(b: &BaseRadius) -> Value {
    json!({"r": surd_to(&b.radius), "monoid": monoid_to(&b.monoid)})
}

pub fn spec_to(s: &BuildSpec) -> Value {
    let mut v = json!({
        "radii": s.radii.iter().map(base_to).collect::<Vec<_>>(),
        "stages": s.stages,
        "window": rat_to(&s.window),
        "seed": s.seed,
        "denom_bound": s.denom_bound,
        "max_backtracks": s.max_backtracks,
    });
    if let Some(c) = &s.copy_window {
        v["copy_window"] = rat_to(c);
    }
    v
}

pub fn certificate_to(c: &Certificate) -> Value {
    let surds = |xs: &[Surd]| xs.iter().map(surd_to).collect::<Vec<_>>();
    json!({
        "classes": c.classes.iter().map(base_to).collect::<Vec<_>>(),
        "realized_distances": surds(&c.realized_distances),
        "generic_values": surds(&c.generic_values),
        "complete_spheres": c.complete_spheres.iter().map(|s| json!({
            "center": s.center, "radius": surd_to(&s.radius), "members": s.members,
        })).collect::<Vec<_>>(),
        "incomplete_spheres": c.incomplete_spheres,
        "targets": c.targets.iter().map(|t| json!({
            "stage": t.stage, "center": t.center, "class": t.class, "members": t.members, "copy": t.copy,
        })).collect::<Vec<_>>(),
        "stages": c.stages.iter().map(|s| json!({
            "stage": s.stage,
            "points": s.points,
            "targets": s.targets,
            "copies": s.copies,
            "assignments": s.assignments,
            "backtracks": s.backtracks,
            "union_certified": s.union_certified,
            "monotone": s.monotone,
            "two_point_symmetry": s.two_point_symmetry,
            "sphere_cap": s.sphere_cap,
        })).collect::<Vec<_>>(),
    })
}

fn surd_list(v: &Value, path: &str) -> Result<Vec<Surd>, FormatError> {
    arr(v, path)?.iter().enumerate().map(|(i, x)| surd_from(x, &format!("{path}[{i}]"))).collect()
}

pub fn certificate_from(v: &Value, path: &str) -> Result<Certificate, FormatError> {
    let o = obj(v, path)?;
    let at = |k: &str| -> Result<(&Value, String), FormatError> { Ok((get(o, k, path)?, sub(path, k))) };
    let (cl, clp) = at("classes")?;
    let mut classes = Vec::new();
    for (i, c) in arr(cl, &clp)?.iter().enumerate() {
        let p = format!("{clp}[{i}]");
        let co = obj(c, &p)?;
        classes.push(BaseRadius {
            radius: surd_from(get(co, "r", &p)?, &sub(&p, "r"))?,
            monoid: monoid_from(get(co, "monoid", &p)?, &sub(&p, "monoid"))?,
        });
    }
    let (rd, rdp) = at("realized_distances")?;
    let (gv, gvp) = at("generic_values")?;
    let (cs, csp) = at("complete_spheres")?;
    let mut complete_spheres = Vec::new();
    for (i, s) in arr(cs, &csp)?.iter().enumerate() {
        let p = format!("{csp}[{i}]");
        let so = obj(s, &p)?;
        complete_spheres.push(SphereRecord {
            center: string(get(so, "center", &p)?, &sub(&p, "center"))?.to_string(),
            radius: surd_from(get(so, "radius", &p)?, &sub(&p, "radius"))?,
            members: strings(get(so, "members", &p)?, &sub(&p, "members"))?,
        });
    }
    let (inc, incp) = at("incomplete_spheres")?;
    let (ts, tsp) = at("targets")?;
    let mut targets = Vec::new();
    for (i, t) in arr(ts, &tsp)?.iter().enumerate() {
        let p = format!("{tsp}[{i}]");
        let to = obj(t, &p)?;
        let n = |k: &str| -> Result<usize, FormatError> { Ok(uint(get(to, k, &p)?, &sub(&p, k))? as usize) };
        targets.push(Target {
            stage: n("stage")?,
            center: string(get(to, "center", &p)?, &sub(&p, "center"))?.to_string(),
            class: n("class")?,
            members: strings(get(to, "members", &p)?, &sub(&p, "members"))?,
            copy: n("copy")?,
        });
    }
    let (st, stp) = at("stages")?;
    let mut stages = Vec::new();
    for (i, s) in arr(st, &stp)?.iter().enumerate() {
        let p = format!("{stp}[{i}]");
        let so = obj(s, &p)?;
        let n = |k: &str| -> Result<usize, FormatError> { Ok(uint(get(so, k, &p)?, &sub(&p, k))? as usize) };
        let b = |k: &str| -> Result<bool, FormatError> { boolean(get(so, k, &p)?, &sub(&p, k)) };
        let uc = get(so, "union_certified", &p)?;
        stages.push(StageReport {
            stage: n("stage")?,
            points: n("points")?,
            targets: n("targets")?,
            copies: n("copies")?,
            assignments: n("assignments")?,
            backtracks: n("backtracks")?,
            union_certified: if uc.is_null() { None } else { Some(boolean(uc, &sub(&p, "union_certified"))?) },
            monotone: b("monotone")?,
            two_point_symmetry: b("two_point_symmetry")?,
            sphere_cap: b("sphere_cap")?,
        });
    }
    Ok(Certificate {
        classes,
        realized_distances: surd_list(rd, &rdp)?,
        generic_values: surd_list(gv, &gvp)?,
        complete_spheres,
        incomplete_spheres: uint(inc, &incp)? as usize,
        targets,
        stages,
    })
}

/// Fragment format plus a `certificate` field.
pub fn build_output_to(f: &MetricFragment, c: &Certificate) -> Value {
    let mut v = fragment_to(f);
    v["certificate"] = certificate_to(c);
    v
}

pub fn build_output_from(v: &Value) -> Result<(MetricFragment, Option<Certificate>), FormatError> {
    let f = fragment_from(v)?;
    let c = match v.get("certificate") {
        Some(c) => Some(certificate_from(c, "$.certificate")?),
        None => None,
    };
    Ok((f, c))
}
