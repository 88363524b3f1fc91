//! Vertex-disjoint A-paths.

use serde::{Deserialize, Serialize};

use super::{max_far_subfamily, Farness};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::paths::{minimal_paths, PathFamily};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiPacking {
    pub count: usize,
    pub paths: Vec<Vec<Vertex>>,
    /// How the optimum was certified.
    pub mode: String,
}

/// Maximum number of vertex-disjoint A-paths, by exhaustive search over
/// the minimal A-paths.
pub fn gallai_packing(g: &Graph, a: &VertexSet, caps: &Caps) -> Result<GallaiPacking> {
    g.check_set(a)?;
    if g.vertex_count() > caps.gallai_vertices {
        return Err(Error::Capacity {
            what: "exhaustive A-path packing",
            limit: caps.gallai_vertices,
            actual: g.vertex_count(),
        });
    }
    let candidates = minimal_paths(g, &PathFamily::a_paths(a.clone()), caps.candidate_paths)?;
    let sets: Vec<VertexSet> = candidates.iter().map(|p| p.iter().copied().collect()).collect();
    // distance > 0 is exactly disjointness
    let best = max_far_subfamily(g, &sets, Farness::GreaterThan(0.0), caps.search_nodes)?;
    let paths: Vec<Vec<Vertex>> = best.members.iter().map(|&i| candidates[i].clone()).collect();
    Ok(GallaiPacking {
        count: paths.len(),
        paths,
        mode: "exhaustive".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let caps = Caps::default();
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(gallai_packing(&p3, &VertexSet::from([1]), &caps).unwrap().count, 0);
        assert_eq!(gallai_packing(&p3, &VertexSet::from([0, 2]), &caps).unwrap().count, 1);
        let two = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert_eq!(gallai_packing(&two, &VertexSet::from([0, 2, 3, 5]), &caps).unwrap().count, 2);
    }
}
