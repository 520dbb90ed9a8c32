//! Graph pseudometrics with exact edge values: shortest-path distance `hat`, the lower
//! obstruction `check`, floppiness, the canonical graph metric of a monoid, completion to a
//! full metric and unions of graph metrics.

mod extend;
mod mu;
mod union;

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use thiserror::Error;

use crate::surd::Surd;

pub use extend::{extend_to_full, Assignment, Extension, ExtensionPolicy};
pub use mu::{build_mu, MuGraph};
pub use union::{floppy_union, UnionMember, UnionReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge {0}-{1} must join distinct vertices")]
    SelfLoop(String, String),
    #[error("edge {0}-{1} has non-positive value {2}")]
    NonPositive(String, String, String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge {0}-{1} is longer than the shortest path between its ends")]
    NotAGraphMetric(String, String),
    #[error("extension exhausted after {backtracks} backtracks: check equals hat at {pair:?}")]
    ExtensionExhausted { pair: (String, String), backtracks: usize },
    #[error("condition ({condition}) of the floppy union fails: {detail}")]
    ConditionViolation { condition: u8, detail: String },
    #[error("monoid has no nonzero elements")]
    EmptyMonoid,
}

/// Connected weighted graph with positive exact edge values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphMetric {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), Surd>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl GraphMetric {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<S: AsRef<str>>(names: &[S]) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for n in names {
            g.add_vertex(n.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, GraphError> {
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn vertex(&self, name: &str) -> Result<usize, GraphError> {
        self.index.get(name).copied().ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn set_edge(&mut self, u: usize, v: usize, value: Surd) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(self.names[u].clone(), self.names[v].clone()));
        }
        if value.signum() != Ordering::Greater {
            return Err(GraphError::NonPositive(self.names[u].clone(), self.names[v].clone(), value.to_string()));
        }
        self.edges.insert(key(u, v), value);
        Ok(())
    }

    pub fn set_edge_named(&mut self, u: &str, v: &str, value: Surd) -> Result<(), GraphError> {
        let (a, b) = (self.vertex(u)?, self.vertex(v)?);
        self.set_edge(a, b, value)
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) -> Option<Surd> {
        self.edges.remove(&key(u, v))
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<&Surd> {
        self.edges.get(&key(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Surd)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, &Surd)>> {
        let mut adj = vec![Vec::new(); self.n()];
        for (&(u, v), w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_full(&self) -> bool {
        let n = self.n();
        self.edges.len() == n * n.saturating_sub(1) / 2
    }

    /// Vertex pairs without an edge, in lexicographic order of vertex positions.
    pub fn missing_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.edges.contains_key(&(u, v)) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Exact single-source shortest paths; `None` marks unreachable vertices.
pub fn hat_from(g: &GraphMetric, src: usize) -> Vec<Option<Surd>> {
    let adj = g.adjacency();
    let mut dist: Vec<Option<Surd>> = vec![None; g.n()];
    let mut done = vec![false; g.n()];
    let mut heap = BinaryHeap::new();
    dist[src] = Some(Surd::zero());
    heap.push(Reverse((Surd::zero(), src)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, w) in &adj[u] {
            if done[v] {
                continue;
            }
            let nd = &d + w;
            if dist[v].as_ref().is_none_or(|old| nd < *old) {
                dist[v] = Some(nd.clone());
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

/// Source of shortest-path values; graph metrics use path search, canonical monoid graphs
/// may use a closed formula instead.
pub trait HatSource {
    fn hat(&self, x: usize, y: usize) -> Option<Surd>;
}

/// All-pairs exact shortest paths.
#[derive(Debug, Clone)]
pub struct HatTable {
    n: usize,
    d: Vec<Option<Surd>>,
}

impl HatTable {
    pub fn new(g: &GraphMetric) -> Self {
        let n = g.n();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(hat_from(g, s));
        }
        HatTable { n, d }
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&Surd> {
        self.d[x * self.n + y].as_ref()
    }
}

impl HatSource for HatTable {
    fn hat(&self, x: usize, y: usize) -> Option<Surd> {
        self.get(x, y).cloned()
    }
}

pub fn hat(g: &GraphMetric, x: usize, y: usize) -> Option<Surd> {
    hat_from(g, x).swap_remove(y)
}

/// `max over edges ab (both orientations) of max(0, d(ab) - hat(a,x) - hat(b,y))`.
pub fn check_with(g: &GraphMetric, hs: &impl HatSource, x: usize, y: usize) -> Surd {
    let mut best = Surd::zero();
    for (a, b, w) in g.edges() {
        for (a, b) in [(a, b), (b, a)] {
            if let (Some(hax), Some(hby)) = (hs.hat(a, x), hs.hat(b, y)) {
                let t = &(w - &hax) - &hby;
                if t > best {
                    best = t;
                }
            }
        }
    }
    best
}

pub fn check(g: &GraphMetric, x: usize, y: usize) -> Surd {
    check_with(g, &HatTable::new(g), x, y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub ok: bool,
    pub violating_edge: Option<(usize, usize)>,
}

/// Every edge value equals the shortest-path distance between its ends.
pub fn validate_pseudometric(g: &GraphMetric) -> Result<Validation, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    for u in 0..g.n() {
        let h = hat_from(g, u);
        for (a, b, w) in g.edges() {
            if a == u && h[b].as_ref() != Some(w) {
                return Ok(Validation { ok: false, violating_edge: Some((a, b)) });
            }
        }
    }
    Ok(Validation { ok: true, violating_edge: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloppyGraphVerdict {
    pub floppy: bool,
    pub witness: Option<(usize, usize)>,
}

pub fn is_floppy_graph_with(g: &GraphMetric, hs: &impl HatSource) -> FloppyGraphVerdict {
    for (x, y) in g.missing_pairs() {
        let c = check_with(g, hs, x, y);
        let strict = match hs.hat(x, y) {
            Some(h) => c < h,
            None => true,
        };
        if !strict {
            return FloppyGraphVerdict { floppy: false, witness: Some((x, y)) };
        }
    }
    FloppyGraphVerdict { floppy: true, witness: None }
}

/// `check < hat` at every pair without an edge.
pub fn is_floppy_graph(g: &GraphMetric) -> FloppyGraphVerdict {
    is_floppy_graph_with(g, &HatTable::new(g))
}

/// All triangle inequalities of a full graph, checked exactly. Returns a violating triple.
pub fn triangle_violation(g: &GraphMetric) -> Option<(usize, usize, usize)> {
    let n = g.n();
    let d = |a: usize, b: usize| g.edge(a, b);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ab, bc, ac) = (d(a, b)?, d(b, c)?, d(a, c)?);
                if ab + bc < *ac || ab + ac < *bc || ac + bc < *ab {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn path_with_chord(chord: i64) -> GraphMetric {
        let mut g = GraphMetric::with_vertices(&["0", "1", "2"]).unwrap();
        g.set_edge(0, 1, Surd::from_int(1)).unwrap();
        g.set_edge(1, 2, Surd::from_int(1)).unwrap();
        g.set_edge(0, 2, Surd::from_int(chord)).unwrap();
        g
    }

    #[test]
    fn validation_examples() {
        assert!(validate_pseudometric(&path_with_chord(2)).unwrap().ok);
        let v = validate_pseudometric(&path_with_chord(3)).unwrap();
        assert_eq!(v, Validation { ok: false, violating_edge: Some((0, 2)) });
        let mut g = GraphMetric::with_vertices(&["a", "b", "c"]).unwrap();
        g.set_edge(0, 1, Surd::from_int(1)).unwrap();
        assert_eq!(validate_pseudometric(&g), Err(GraphError::Disconnected));
    }

    #[test]
    fn hat_and_check_examples() {
        let mut g = GraphMetric::with_vertices(&["0", "1", "2"]).unwrap();
        g.set_edge(0, 1, Surd::from_int(1)).unwrap();
        g.set_edge(1, 2, Surd::from_int(1)).unwrap();
        assert_eq!(hat(&g, 0, 2), Some(Surd::from_int(2)));
        assert_eq!(hat(&g, 1, 1), Some(Surd::zero()));
        let mut e = GraphMetric::with_vertices(&["a", "b"]).unwrap();
        e.set_edge(0, 1, Surd::from_int(5)).unwrap();
        assert_eq!(check(&e, 0, 1), Surd::from_int(5));
        // on a validated graph check reproduces every edge value
        let full = path_with_chord(2);
        for (a, b, w) in full.edges() {
            assert_eq!(check(&full, a, b), *w);
        }
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = GraphMetric::with_vertices(&["a", "b"]).unwrap();
        assert!(g.set_edge(0, 1, Surd::from_rat(int(0))).is_err());
        assert!(g.set_edge(0, 0, Surd::from_int(1)).is_err());
        assert!(g.add_vertex("a").is_err());
    }

    #[test]
    fn full_metric_is_floppy() {
        assert!(is_floppy_graph(&path_with_chord(2)).floppy);
        assert!(triangle_violation(&path_with_chord(2)).is_none());
        assert_eq!(triangle_violation(&path_with_chord(3)), Some((0, 1, 2)));
    }
}
