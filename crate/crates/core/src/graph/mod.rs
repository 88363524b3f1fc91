//! Finite simple graphs, optionally edge-weighted, and vertex sets over them.
//!
//! Vertices are dense indices `0..n`. External integer ids are kept as
//! labels (strictly increasing, so index order equals id order) and only
//! matter for ingestion and serialization.

mod centered;
pub mod io;
mod metric;

use std::collections::{BTreeSet, HashSet};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use centered::{certify_centered, CenteredSet, Certification, Refusal, SearchMode};
pub use metric::{approx_eq, at_least, at_most, greater_than, less_than, EPS};

pub type Vertex = usize;

/// A finite simple graph.
///
/// Unweighted graphs have unit edge lengths. The all-pairs distance table is
/// computed on first use and shared by clones.
#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<u64>,
    edges: Vec<(Vertex, Vertex)>,
    weights: Option<Vec<f64>>,
    adjacency: Vec<Vec<(Vertex, usize)>>,
    distances: OnceLock<Arc<Vec<f64>>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges && self.weights == other.weights
    }
}

impl Graph {
    /// Unweighted graph on vertices `0..n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph> {
        Graph::from_parts((0..n as u64).collect(), edges.into_iter().collect(), None)
    }

    /// Weighted graph on vertices `0..n`.
    pub fn weighted(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, f64)>,
    ) -> Result<Graph> {
        let (pairs, weights): (Vec<_>, Vec<_>) =
            edges.into_iter().map(|(u, v, w)| ((u, v), w)).unzip();
        Graph::from_parts((0..n as u64).collect(), pairs, Some(weights))
    }

    /// Builds a graph from labels, index-based edges and optional parallel weights.
    pub fn from_parts(
        labels: Vec<u64>,
        edges: Vec<(Vertex, Vertex)>,
        weights: Option<Vec<f64>>,
    ) -> Result<Graph> {
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("vertex labels must be strictly increasing"));
        }
        let n = labels.len();
        if let Some(ws) = &weights {
            if ws.len() != edges.len() {
                return Err(Error::invalid(format!(
                    "{} weights for {} edges",
                    ws.len(),
                    edges.len()
                )));
            }
            if let Some(w) = ws.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                return Err(Error::invalid(format!("edge weight {w} is not a positive real")));
            }
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut keyed: Vec<((Vertex, Vertex), f64)> = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n {
                return Err(Error::UnknownVertex(u));
            }
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::invalid(format!("parallel edge {}-{}", key.0, key.1)));
            }
            let w = weights.as_ref().map_or(1.0, |ws| ws[i]);
            keyed.push((key, w));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let edges: Vec<_> = keyed.iter().map(|(e, _)| *e).collect();
        let weights = weights.map(|_| keyed.iter().map(|(_, w)| *w).collect());
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, i));
            adjacency[v].push((u, i));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            labels,
            edges,
            weights,
            adjacency,
            distances: OnceLock::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Length of the edge with the given index.
    pub fn edge_length(&self, edge: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |ws| ws[edge])
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> u64 {
        self.labels[v]
    }

    pub fn index_of(&self, label: u64) -> Option<Vertex> {
        self.labels.binary_search(&label).ok()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[v].iter().map(|&(u, _)| u)
    }

    /// Neighbors of `v` with the length of the connecting edge.
    pub fn weighted_neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, f64)> + '_ {
        self.adjacency[v]
            .iter()
            .map(move |&(u, e)| (u, self.edge_length(e)))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count()
            && self.adjacency[u]
                .binary_search_by(|&(x, _)| x.cmp(&v))
                .is_ok()
    }

    /// Index of the edge `uv`, if present.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by(|&(x, _)| x.cmp(&v))
            .ok()
            .map(|i| list[i].1)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<()> {
        match set.iter().find(|&v| v >= self.vertex_count()) {
            Some(v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    /// Component id per vertex, restricted to vertices with `allowed[v]`.
    /// Disallowed vertices get `usize::MAX`. Ids are assigned in order of the
    /// smallest vertex of each component.
    pub fn component_labels(&self, allowed: &[bool]) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if !allowed[s] || comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if allowed[w] && comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Components of the subgraph induced by `within`, each sorted, ordered by
    /// smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mask = within.to_mask(self.vertex_count());
        let (comp, count) = self.component_labels(&mask);
        let mut out = vec![VertexSet::new(); count];
        for v in within.iter() {
            out[comp[v]].insert(v);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.all_vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether the subgraph induced by `set` is connected. The empty set is not.
    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        !set.is_empty() && self.components_within(set).len() == 1
    }

    /// Open neighborhood `N(S)`: vertices outside `S` adjacent to `S`.
    pub fn open_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in set.iter() {
            for w in self.neighbors(v) {
                if !set.contains(w) {
                    out.insert(w);
                }
            }
        }
        out
    }

    /// Copy of this graph with every edge length multiplied by `factor`.
    pub fn with_scaled_weights(&self, factor: f64) -> Result<Graph> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::invalid(format!("scale factor {factor} must be positive")));
        }
        let weights = (0..self.edge_count())
            .map(|e| self.edge_length(e) * factor)
            .collect();
        Graph::from_parts(self.labels.clone(), self.edges.clone(), Some(weights))
    }
}

/// A set of vertices of some host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(BTreeSet::from([v]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Boolean membership vector of length `n`.
    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            if v < n {
                mask[v] = true;
            }
        }
        mask
    }

    pub fn from_mask(mask: &[bool]) -> VertexSet {
        mask.iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
            .collect()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl Extend<Vertex> for VertexSet {
    fn extend<I: IntoIterator<Item = Vertex>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(values: [Vertex; N]) -> Self {
        values.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_graphs() {
        assert!(matches!(Graph::new(2, [(0, 0)]), Err(Error::InvalidInput(_))));
        assert!(matches!(Graph::new(2, [(0, 1), (1, 0)]), Err(Error::InvalidInput(_))));
        assert!(matches!(Graph::new(2, [(0, 2)]), Err(Error::UnknownVertex(2))));
        assert!(Graph::weighted(2, [(0, 1, 0.0)]).is_err());
        assert!(Graph::weighted(2, [(0, 1, -1.0)]).is_err());
        assert!(Graph::weighted(2, [(0, 1, f64::NAN)]).is_err());
    }

    #[test]
    fn edges_are_normalized_and_sorted() {
        let g = Graph::weighted(3, [(2, 1, 3.0), (1, 0, 2.0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.weights().unwrap(), &[2.0, 3.0]);
        assert!(g.has_edge(2, 1));
        assert_eq!(g.edge_index(1, 2), Some(1));
    }

    #[test]
    fn components_in_order_of_smallest_vertex() {
        let g = Graph::new(5, [(3, 4), (0, 2)]).unwrap();
        let comps = g.components();
        assert_eq!(comps, vec![VertexSet::from([0, 2]), VertexSet::from([1]), VertexSet::from([3, 4])]);
        assert!(!g.is_connected());
        assert!(g.induces_connected(&VertexSet::from([3, 4])));
        assert!(!g.induces_connected(&VertexSet::new()));
    }

    #[test]
    fn open_neighborhood_excludes_the_set() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.open_neighborhood(&VertexSet::from([1, 2])), VertexSet::from([0, 3]));
    }
}
