use num_traits::Signed;

use super::{GraphError, GraphMetric, HatSource};
use crate::monoid::{Monoid, SearchWindow};
use crate::rat::{fmt_rat, Rat};
use crate::surd::Surd;

/// Window of the canonical graph metric of a monoid scaled by `scale`: vertices are
/// differences of monoid elements, edges join points whose distance lies in the monoid.
#[derive(Debug, Clone)]
pub struct MuGraph {
    pub graph: GraphMetric,
    /// Vertex positions in units of `scale`, aligned with vertex indices.
    pub coords: Vec<Rat>,
    pub scale: Surd,
    pub monoid: Monoid,
}

impl MuGraph {
    /// Shortest-path value of the infinite graph, via the difference formula.
    pub fn formula_hat(&self, x: usize, y: usize) -> Option<Surd> {
        let d = (&self.coords[x] - &self.coords[y]).abs();
        self.monoid.difference_cost(&d).map(|c| self.scale.scale(&c))
    }

    pub fn position(&self, q: &Rat) -> Option<usize> {
        self.coords.binary_search(q).ok()
    }
}

impl HatSource for MuGraph {
    fn hat(&self, x: usize, y: usize) -> Option<Surd> {
        self.formula_hat(x, y)
    }
}

pub fn build_mu(m: &Monoid, scale: &Surd, window: &Rat, denom_bound: u64) -> Result<MuGraph, GraphError> {
    if m.is_trivial() || scale.is_zero() {
        return Err(GraphError::EmptyMonoid);
    }
    let w = SearchWindow::new(window.clone(), denom_bound);
    let mut coords: Vec<Rat> = m.difference_candidates(&w);
    let negs: Vec<Rat> = coords.iter().filter(|q| q.is_positive()).map(|q| -q).collect();
    coords.extend(negs);
    coords.sort();
    let names: Vec<String> = coords.iter().map(fmt_rat).collect();
    let mut graph = GraphMetric::with_vertices(&names)?;
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            let d = &coords[j] - &coords[i];
            if m.contains(&d) {
                graph.set_edge(i, j, scale.scale(&d))?;
            }
        }
    }
    Ok(MuGraph { graph, coords, scale: scale.clone(), monoid: m.clone() })
}
