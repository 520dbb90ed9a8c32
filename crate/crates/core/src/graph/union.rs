use std::collections::BTreeSet;

use super::{hat_from, is_floppy_graph, GraphError, GraphMetric};
use crate::surd::Surd;

#[derive(Debug, Clone)]
pub struct UnionMember {
    pub graph: GraphMetric,
    /// Floppiness when already known; computed otherwise.
    pub floppy: Option<bool>,
}

impl UnionMember {
    pub fn new(graph: GraphMetric) -> Self {
        UnionMember { graph, floppy: None }
    }
}

#[derive(Debug, Clone)]
pub struct UnionReport {
    pub graph: GraphMetric,
    pub members_floppy: Vec<bool>,
    /// Smallest positivity certificate per member; `None` when the member adds no vertex and
    /// misses no vertex of the base.
    pub certificates: Vec<Option<Surd>>,
    pub floppy_certified: bool,
}

fn violation(condition: u8, detail: String) -> GraphError {
    GraphError::ConditionViolation { condition, detail }
}

/// Glues floppy graph metrics onto a full metric `p`. Checks that each member meets `p`, that
/// members agree with `p` on shared distances and that members meet each other only inside `p`.
/// Floppiness of the union is certified when `p` is full, every member is floppy and every
/// member's certificate is positive.
pub fn floppy_union(p: &GraphMetric, family: &[UnionMember]) -> Result<UnionReport, GraphError> {
    let p_names: BTreeSet<&str> = p.names().iter().map(String::as_str).collect();
    let mut shared: Vec<Vec<&str>> = Vec::new();
    for (k, m) in family.iter().enumerate() {
        let s: Vec<&str> = m.graph.names().iter().map(String::as_str).filter(|v| p_names.contains(v)).collect();
        if s.is_empty() {
            return Err(violation(1, format!("member {k} shares no vertex with the base")));
        }
        shared.push(s);
    }
    for i in 0..family.len() {
        let vi: BTreeSet<&str> = family[i].graph.names().iter().map(String::as_str).collect();
        for j in i + 1..family.len() {
            if let Some(v) = family[j].graph.names().iter().find(|v| vi.contains(v.as_str()) && !p_names.contains(v.as_str())) {
                return Err(violation(3, format!("members {i} and {j} share `{v}` outside the base")));
            }
        }
    }
    // base distances from shared vertices
    let mut p_rows = std::collections::HashMap::new();
    for s in shared.iter().flatten() {
        p_rows.entry(*s).or_insert_with(|| hat_from(p, p.vertex(s).expect("shared")));
    }
    let mut certificates = Vec::new();
    for (k, m) in family.iter().enumerate() {
        let g = &m.graph;
        let f_rows: Vec<Vec<Option<Surd>>> = shared[k].iter().map(|s| hat_from(g, g.vertex(s).expect("shared"))).collect();
        for (ia, a) in shared[k].iter().enumerate() {
            for b in &shared[k] {
                let hf = &f_rows[ia][g.vertex(b)?];
                let hp = &p_rows[a][p.vertex(b)?];
                if hf != hp {
                    return Err(violation(2, format!("member {k}: distance {a}-{b} differs from the base")));
                }
            }
        }
        let mut best: Option<Surd> = None;
        let mut keep = |t: Surd| {
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        };
        for x in 0..g.n() {
            if p_names.contains(g.name(x)) {
                continue;
            }
            for (ia, _) in shared[k].iter().enumerate() {
                for (ib, _) in shared[k].iter().enumerate() {
                    let (ax, bx) = (f_rows[ia][x].clone().expect("connected"), f_rows[ib][x].clone().expect("connected"));
                    let ab = f_rows[ia][g.vertex(shared[k][ib])?].clone().expect("connected");
                    keep(&(&ax + &bx) - &ab);
                }
            }
        }
        let members: BTreeSet<&str> = g.names().iter().map(String::as_str).collect();
        for y in 0..p.n() {
            if members.contains(p.name(y)) {
                continue;
            }
            for a in &shared[k] {
                for b in &shared[k] {
                    let (ay, by) = (p_rows[a][y].clone().expect("connected"), p_rows[b][y].clone().expect("connected"));
                    let ab = p_rows[a][p.vertex(b)?].clone().expect("connected");
                    keep(&(&ay + &by) - &ab);
                }
            }
        }
        certificates.push(best);
    }

    let mut union = p.clone();
    for (k, m) in family.iter().enumerate() {
        let g = &m.graph;
        for v in g.names() {
            if !p_names.contains(v.as_str()) {
                union.add_vertex(v)?;
            }
        }
        for (a, b, w) in g.edges() {
            let (ua, ub) = (union.vertex(g.name(a))?, union.vertex(g.name(b))?);
            match union.edge(ua, ub) {
                Some(old) if old != w => {
                    return Err(violation(2, format!("member {k}: edge {}-{} conflicts with the base", g.name(a), g.name(b))));
                }
                Some(_) => {}
                None => union.set_edge(ua, ub, w.clone())?,
            }
        }
    }
    let members_floppy: Vec<bool> = family.iter().map(|m| m.floppy.unwrap_or_else(|| is_floppy_graph(&m.graph).floppy)).collect();
    let floppy_certified = p.is_full()
        && members_floppy.iter().all(|&b| b)
        && certificates.iter().all(|c| c.as_ref().is_none_or(|c| c.signum().is_gt()));
    Ok(UnionReport { graph: union, members_floppy, certificates, floppy_certified })
}
