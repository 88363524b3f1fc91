//! Rescaling edge lengths and subdividing long edges.

use crate::error::Result;
use crate::graph::Graph;

/// Multiplies every edge length by `lambda`. A factor of 1 returns the
/// graph as it is, unweighted graphs included.
pub fn scale_metric(g: &Graph, lambda: f64) -> Result<Graph> {
    if lambda == 1.0 {
        return Ok(g.clone());
    }
    g.with_scaled_weights(lambda)
}

/// Replaces each edge of length `w > 1` by a path of `⌈w⌉` edges of length
/// `w/⌈w⌉`. Original vertices keep their indices and labels; new ones are
/// appended with labels above the largest existing one. Distances between
/// original vertices are unchanged.
pub fn subdivide_to_unit(g: &Graph) -> Result<Graph> {
    let long = (0..g.edge_count()).any(|e| g.edge_length(e) > 1.0);
    if !long {
        return Ok(g.clone());
    }
    let n = g.vertex_count();
    let mut labels = g.labels().to_vec();
    let next = labels.last().map_or(0, |&l| l + 1);
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let w = g.edge_length(e);
        let pieces = w.ceil() as usize;
        let piece = w / pieces as f64;
        let mut prev = u;
        for _ in 1..pieces {
            let x = labels.len();
            labels.push(next + (x - n) as u64);
            edges.push((prev, x));
            weights.push(piece);
            prev = x;
        }
        edges.push((prev, v));
        weights.push(piece);
    }
    Graph::from_parts(labels, edges, Some(weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_scale_is_identity() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(scale_metric(&g, 1.0).unwrap(), g);
        let doubled = scale_metric(&g, 2.0).unwrap();
        assert_eq!(doubled.dist(0, 2), 4.0);
        assert!(scale_metric(&g, 0.0).is_err());
    }

    #[test]
    fn long_edge_is_split_evenly() {
        let g = Graph::weighted(2, [(0, 1, 2.5)]).unwrap();
        let s = subdivide_to_unit(&g).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.edge_count(), 3);
        for e in 0..3 {
            assert!((s.edge_length(e) - 2.5 / 3.0).abs() < 1e-12);
        }
        assert!((s.dist(0, 1) - 2.5).abs() < 1e-9);
    }

    #[test]
    fn short_edges_are_left_alone() {
        let g = Graph::weighted(3, [(0, 1, 0.5), (1, 2, 1.0)]).unwrap();
        assert_eq!(subdivide_to_unit(&g).unwrap(), g);
    }

    #[test]
    fn heavy_triangle_keeps_distances() {
        let g = Graph::weighted(3, [(0, 1, 3.0), (1, 2, 3.0), (0, 2, 3.0)]).unwrap();
        let s = subdivide_to_unit(&g).unwrap();
        assert_eq!(s.vertex_count(), 9);
        for u in 0..3 {
            for v in 0..3 {
                assert!((s.dist(u, v) - g.dist(u, v)).abs() < 1e-9);
            }
        }
    }
}
