//! Packings of pairwise far paths.

mod flow;
mod gallai;
pub mod mis;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{at_least, at_most, greater_than, less_than, Graph, VertexSet};
use crate::paths::{minimal_paths, min_pairwise_distance, shortest_member_within, PathFamily, PathWitness};

pub use flow::{menger_packing, menger_paths};
pub use gallai::{gallai_packing, GallaiPacking};
pub use mis::{max_independent_set, IndependentSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMode {
    Exact,
    Greedy,
}

/// When two members count as far apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "relation", content = "threshold", rename_all = "snake_case")]
pub enum Farness {
    /// Set distance at least the threshold.
    AtLeast(f64),
    /// Set distance strictly greater than the threshold.
    GreaterThan(f64),
}

impl Farness {
    pub fn holds(self, d: f64) -> bool {
        match self {
            Farness::AtLeast(r) => at_least(d, r),
            Farness::GreaterThan(r) => greater_than(d, r),
        }
    }

    /// Whether a vertex at distance `d` from one member rules out a second
    /// member through it.
    fn too_close(self, d: f64) -> bool {
        match self {
            Farness::AtLeast(r) => less_than(d, r),
            Farness::GreaterThan(r) => at_most(d, r),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackingInstance<'a> {
    pub host: &'a Graph,
    pub family: PathFamily,
    pub r: f64,
    pub mode: SolveMode,
}

impl<'a> PackingInstance<'a> {
    pub fn lxy(host: &'a Graph, ell: f64, x: VertexSet, y: VertexSet, r: f64, mode: SolveMode) -> Self {
        PackingInstance {
            host,
            family: PathFamily::lxy(ell, x, y),
            r,
            mode,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingMethod {
    /// Maximum independent set over all minimal candidate paths.
    Exhaustive,
    /// Greedy packing matched by the bound from far-apart path ends.
    EndpointBound,
    Greedy,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    pub nodes_explored: usize,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingSolution {
    pub paths: Vec<PathWitness>,
    pub size: usize,
    /// `None` for fewer than two paths.
    pub certified_min_pairwise_distance: Option<f64>,
    pub optimal: bool,
    pub method: PackingMethod,
    pub stats: SolverStats,
}

impl PackingSolution {
    fn new(g: &Graph, seqs: Vec<Vec<usize>>, optimal: bool, method: PackingMethod, stats: SolverStats) -> Self {
        let sets: Vec<VertexSet> = seqs.iter().map(|p| p.iter().copied().collect()).collect();
        let d = min_pairwise_distance(g, &sets);
        let paths: Vec<PathWitness> = seqs
            .into_iter()
            .map(|p| PathWitness::from_trusted(g, p))
            .collect();
        PackingSolution {
            size: paths.len(),
            paths,
            certified_min_pairwise_distance: d.is_finite().then_some(d),
            optimal,
            method,
            stats,
        }
    }
}

/// Largest collection of members of the family pairwise at distance ≥ `r`.
///
/// Exact mode solves an independent set problem over the minimal members
/// (lossless, see [`minimal_paths`]). Above the path cap it falls back to a
/// greedy packing and accepts it as optimal only if it meets the bound from
/// pairwise far path ends; otherwise it is a capacity error.
pub fn max_far_packing(inst: &PackingInstance, caps: &Caps) -> Result<PackingSolution> {
    let g = inst.host;
    inst.family.validate(g)?;
    if !(inst.r.is_finite() && inst.r > 0.0) {
        return Err(Error::invalid(format!("packing threshold {} must be positive", inst.r)));
    }
    let far = Farness::AtLeast(inst.r);
    if inst.mode == SolveMode::Greedy {
        return Ok(greedy_packing(g, &inst.family, far));
    }
    if g.vertex_count() <= caps.path_vertices {
        match exhaustive(g, &inst.family, far, caps) {
            Err(e) if e.is_capacity() => {}
            other => return other,
        }
    }
    let lower = greedy_packing(g, &inst.family, far);
    let upper = endpoint_bound(g, &inst.family, far, caps)?;
    if lower.size == upper {
        return Ok(PackingSolution {
            optimal: true,
            method: PackingMethod::EndpointBound,
            ..lower
        });
    }
    Err(Error::Capacity {
        what: "exact packing (path vertices)",
        limit: caps.path_vertices,
        actual: g.vertex_count(),
    })
}

fn exhaustive(g: &Graph, family: &PathFamily, far: Farness, caps: &Caps) -> Result<PackingSolution> {
    let candidates = minimal_paths(g, family, caps.candidate_paths)?;
    let sets: Vec<VertexSet> = candidates.iter().map(|p| p.iter().copied().collect()).collect();
    let best = max_far_subfamily(g, &sets, far, caps.search_nodes)?;
    let stats = SolverStats {
        nodes_explored: best.nodes_explored,
        candidates: candidates.len(),
    };
    let chosen = best.members.iter().map(|&i| candidates[i].clone()).collect();
    Ok(PackingSolution::new(g, chosen, true, PackingMethod::Exhaustive, stats))
}

/// Conflict sets between explicit members: `i` and `j` conflict unless far.
pub fn conflict_sets(g: &Graph, members: &[VertexSet], far: Farness) -> Vec<BitSet> {
    let n = g.vertex_count();
    let near: Vec<BitSet> = members
        .iter()
        .map(|m| {
            let mut b = BitSet::new(n);
            for v in g.vertices() {
                if far.too_close(g.dist_to_set(v, m)) {
                    b.insert(v);
                }
            }
            b
        })
        .collect();
    let as_bits: Vec<BitSet> = members
        .iter()
        .map(|m| {
            let mut b = BitSet::new(n);
            for v in m.iter() {
                b.insert(v);
            }
            b
        })
        .collect();
    let mut conflicts = vec![BitSet::new(members.len()); members.len()];
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if near[i].intersects(&as_bits[j]) {
                conflicts[i].insert(j);
                conflicts[j].insert(i);
            }
        }
    }
    conflicts
}

/// Largest subfamily of explicit members that are pairwise far.
pub fn max_far_subfamily(
    g: &Graph,
    members: &[VertexSet],
    far: Farness,
    node_limit: usize,
) -> Result<IndependentSet> {
    if let Some(i) = members.iter().position(VertexSet::is_empty) {
        return Err(Error::invalid(format!("family member {i} is empty")));
    }
    max_independent_set(&conflict_sets(g, members, far), node_limit)
}

/// Repeatedly adds the shortest member avoiding everything too close to the
/// members chosen so far.
pub fn greedy_packing(g: &Graph, family: &PathFamily, far: Farness) -> PackingSolution {
    let mut allowed = vec![true; g.vertex_count()];
    let mut chosen = Vec::new();
    let mut rounds = 0;
    while let Some(p) = shortest_member_within(g, family, &allowed) {
        rounds += 1;
        let set: VertexSet = p.iter().copied().collect();
        for v in g.vertices() {
            if allowed[v] && far.too_close(g.dist_to_set(v, &set)) {
                allowed[v] = false;
            }
        }
        chosen.push(p);
    }
    chosen.sort();
    let stats = SolverStats {
        nodes_explored: rounds,
        candidates: 0,
    };
    PackingSolution::new(g, chosen, false, PackingMethod::Greedy, stats)
}

/// Upper bound on any packing: members that are pairwise far have pairwise
/// far ends on each side.
fn endpoint_bound(g: &Graph, family: &PathFamily, far: Farness, caps: &Caps) -> Result<usize> {
    let spread = |ends: &VertexSet| -> Result<usize> {
        let points: Vec<VertexSet> = ends.iter().map(VertexSet::singleton).collect();
        Ok(max_far_subfamily(g, &points, far, caps.search_nodes)?.members.len())
    };
    match family {
        PathFamily::Lxy { x, y, .. } => Ok(spread(x)?.min(spread(y)?)),
        PathFamily::APaths { a } => Ok(spread(a)? / 2),
    }
}
