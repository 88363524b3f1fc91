//! Shortest-path distances, set distances and closed neighborhoods.

use std::collections::VecDeque;
use std::sync::Arc;

use super::{Graph, Vertex, VertexSet};
use crate::error::{Error, Result};

/// Absolute tolerance for comparisons of weighted distances. Unweighted
/// distances are integers and all radii used on them are multiples of 0.1,
/// so the tolerance never changes an unweighted comparison.
pub const EPS: f64 = 1e-9;

pub fn at_most(d: f64, bound: f64) -> bool {
    d <= bound + EPS
}

pub fn at_least(d: f64, bound: f64) -> bool {
    d >= bound - EPS
}

pub fn less_than(d: f64, bound: f64) -> bool {
    d < bound - EPS
}

pub fn greater_than(d: f64, bound: f64) -> bool {
    d > bound + EPS
}

pub fn approx_eq(a: f64, b: f64) -> bool {
    (a.is_infinite() && b.is_infinite() && a.signum() == b.signum()) || (a - b).abs() <= EPS
}

impl Graph {
    /// Single-source shortest path lengths; `f64::INFINITY` when unreachable.
    ///
    /// Breadth-first search on unweighted graphs, a FIFO label-correcting
    /// scan on weighted ones.
    pub fn single_source(&self, source: Vertex) -> Vec<f64> {
        let n = self.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        dist[source] = 0.0;
        let mut queue = VecDeque::from([source]);
        if !self.is_weighted() {
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if dist[w].is_infinite() {
                        dist[w] = dist[u] + 1.0;
                        queue.push_back(w);
                    }
                }
            }
            return dist;
        }
        let mut queued = vec![false; n];
        queued[source] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for (w, len) in self.weighted_neighbors(u) {
                let candidate = dist[u] + len;
                if candidate < dist[w] {
                    dist[w] = candidate;
                    if !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    fn distance_table(&self) -> &Arc<Vec<f64>> {
        self.distances.get_or_init(|| {
            let n = self.vertex_count();
            let mut table = Vec::with_capacity(n * n);
            for s in 0..n {
                table.extend(self.single_source(s));
            }
            Arc::new(table)
        })
    }

    /// Distance between two vertices known to exist.
    #[inline]
    pub fn dist(&self, u: Vertex, v: Vertex) -> f64 {
        self.distance_table()[u * self.vertex_count() + v]
    }

    /// Row of the distance table for `u`.
    pub fn distances_from(&self, u: Vertex) -> &[f64] {
        let n = self.vertex_count();
        &self.distance_table()[u * n..(u + 1) * n]
    }

    /// Checked shortest-path distance.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<f64> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.dist(u, v))
    }

    /// Distance from `v` to the nearest member of `set`; infinity for an empty set.
    pub fn dist_to_set(&self, v: Vertex, set: &VertexSet) -> f64 {
        let row = self.distances_from(v);
        set.iter().map(|s| row[s]).fold(f64::INFINITY, f64::min)
    }

    /// Minimum pairwise distance between two nonempty vertex sets.
    pub fn set_distance(&self, s: &VertexSet, t: &VertexSet) -> Result<f64> {
        if s.is_empty() {
            return Err(Error::EmptySet("s"));
        }
        if t.is_empty() {
            return Err(Error::EmptySet("t"));
        }
        self.check_set(s)?;
        self.check_set(t)?;
        Ok(self.set_distance_unchecked(s, t))
    }

    pub(crate) fn set_distance_unchecked(&self, s: &VertexSet, t: &VertexSet) -> f64 {
        if s.intersects(t) {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for u in s.iter() {
            let row = self.distances_from(u);
            for v in t.iter() {
                best = best.min(row[v]);
            }
        }
        best
    }

    /// Membership mask of `N≤r[S]`.
    pub fn ball_mask(&self, set: &VertexSet, radius: f64) -> Vec<bool> {
        let n = self.vertex_count();
        let mut mask = vec![false; n];
        for s in set.iter() {
            let row = self.distances_from(s);
            for (v, slot) in mask.iter_mut().enumerate() {
                if !*slot && at_most(row[v], radius) {
                    *slot = true;
                }
            }
        }
        mask
    }

    /// Closed neighborhood `N≤r[S]`. A negative radius gives the empty set.
    pub fn neighborhood(&self, set: &VertexSet, radius: f64) -> Result<VertexSet> {
        self.check_set(set)?;
        if radius.is_nan() {
            return Err(Error::invalid("radius is NaN"));
        }
        Ok(self.ball(set, radius))
    }

    pub(crate) fn ball(&self, set: &VertexSet, radius: f64) -> VertexSet {
        VertexSet::from_mask(&self.ball_mask(set, radius))
    }

    /// Ball of radius `r` around a single vertex.
    pub fn vertex_ball(&self, v: Vertex, radius: f64) -> VertexSet {
        self.distances_from(v)
            .iter()
            .enumerate()
            .filter_map(|(u, &d)| at_most(d, radius).then_some(u))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn grid(rows: usize, cols: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                let v = i * cols + j;
                if j + 1 < cols {
                    edges.push((v, v + 1));
                }
                if i + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::new(rows * cols, edges).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(path(3).distance(0, 2).unwrap(), 2.0);
        assert_eq!(path(3).distance(1, 1).unwrap(), 0.0);
        // opposite corners of the 4x4 grid; BFS by hand gives 3 + 3
        assert_eq!(grid(4, 4).distance(0, 15).unwrap(), 6.0);
        assert!(matches!(path(3).distance(0, 7), Err(Error::UnknownVertex(7))));
        let two = Graph::new(2, []).unwrap();
        assert!(two.distance(0, 1).unwrap().is_infinite());
    }

    #[test]
    fn set_distance_examples() {
        let p5 = path(5);
        assert_eq!(p5.set_distance(&VertexSet::from([0, 1]), &VertexSet::from([1, 4])).unwrap(), 0.0);
        assert_eq!(p5.set_distance(&VertexSet::from([0]), &VertexSet::from([4])).unwrap(), 4.0);
        let g = grid(3, 3);
        let first = VertexSet::from([0, 3, 6]);
        let last = VertexSet::from([2, 5, 8]);
        assert_eq!(g.set_distance(&first, &last).unwrap(), 2.0);
        assert_eq!(g.set_distance(&VertexSet::new(), &last), Err(Error::EmptySet("s")));
        assert_eq!(g.set_distance(&first, &VertexSet::new()), Err(Error::EmptySet("t")));
    }

    #[test]
    fn neighborhood_examples() {
        let p5 = path(5);
        let s = VertexSet::from([2]);
        assert_eq!(p5.neighborhood(&s, 0.0).unwrap(), s);
        assert_eq!(p5.neighborhood(&s, 1.0).unwrap(), VertexSet::from([1, 2, 3]));
        let g = grid(5, 5);
        let ball = g.neighborhood(&VertexSet::from([12]), 2.0).unwrap();
        assert_eq!(ball.len(), 13);
        // brute-force L1 ball
        for v in 0..25usize {
            let (i, j) = (v / 5, v % 5);
            let l1 = i.abs_diff(2) + j.abs_diff(2);
            assert_eq!(ball.contains(v), l1 <= 2);
        }
    }

    #[test]
    fn weighted_label_correcting() {
        let g = Graph::weighted(4, [(0, 1, 5.0), (0, 2, 1.0), (2, 1, 1.5), (1, 3, 0.25)]).unwrap();
        assert_eq!(g.dist(0, 1), 2.5);
        assert_eq!(g.dist(0, 3), 2.75);
        assert_eq!(g.dist(3, 0), 2.75);
    }
}
