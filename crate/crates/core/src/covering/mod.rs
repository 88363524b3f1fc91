//! Fewest balls of a given radius meeting every member of a family.

mod duality;
mod setcover;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{at_most, CenteredSet, Graph, Vertex, VertexSet};
use crate::packing::{greedy_packing, Farness, SolveMode};
use crate::paths::{has_member_within, minimal_paths, shortest_member_within, PathFamily};

pub use duality::{
    duality_sweep, gallai_check, instance_fingerprint, weak_duality_violations, CellStatus, CoverCell, DualityReport, GallaiVerdict,
    PackingCell,
};
pub use setcover::{exact_set_cover, greedy_set_cover, Cover};

/// What has to be hit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum HitFamily {
    Paths(PathFamily),
    /// Vertex sets of explicit subgraphs.
    Explicit(Vec<VertexSet>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverInstance<'a> {
    pub host: &'a Graph,
    pub family: HitFamily,
    pub radius: f64,
    pub mode: SolveMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMethod {
    /// Set cover over explicit members or minimal candidate paths.
    SetCover,
    /// Branching on a surviving path, for families too large to list.
    WitnessBranching,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverSolution {
    /// Union of the chosen balls, with the chosen centers.
    pub centered: CenteredSet,
    pub count: usize,
    pub optimal: bool,
    pub method: CoverMethod,
    pub nodes_explored: usize,
}

impl CoverSolution {
    fn from_centers(g: &Graph, centers: VertexSet, radius: f64, optimal: bool, method: CoverMethod, nodes: usize) -> Self {
        CoverSolution {
            count: centers.len(),
            centered: CenteredSet {
                members: g.ball(&centers, radius),
                centers,
                radius,
            },
            optimal,
            method,
            nodes_explored: nodes,
        }
    }
}

/// Minimum number of radius-`radius` balls, centered at vertices, whose
/// union meets every member.
pub fn min_ball_hitting(inst: &CoverInstance, caps: &Caps) -> Result<CoverSolution> {
    let g = inst.host;
    let beta = inst.radius;
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::invalid(format!("ball radius {beta} must be nonnegative")));
    }
    let exact = inst.mode == SolveMode::Exact;
    match &inst.family {
        HitFamily::Explicit(members) => {
            for (i, m) in members.iter().enumerate() {
                if m.is_empty() {
                    return Err(Error::invalid(format!("family member {i} is empty")));
                }
                g.check_set(m)?;
            }
            cover_explicit(g, members, beta, exact, caps)
        }
        HitFamily::Paths(family) => {
            family.validate(g)?;
            if g.vertex_count() <= caps.path_vertices {
                match minimal_paths(g, family, caps.candidate_paths) {
                    Ok(paths) => {
                        let members: Vec<VertexSet> =
                            paths.iter().map(|p| p.iter().copied().collect()).collect();
                        return cover_explicit(g, &members, beta, exact, caps);
                    }
                    Err(e) if e.is_capacity() => {}
                    Err(e) => return Err(e),
                }
            }
            if exact {
                cover_by_branching(g, family, beta, caps)
            } else {
                Ok(greedy_implicit(g, family, beta))
            }
        }
    }
}

fn cover_explicit(g: &Graph, members: &[VertexSet], beta: f64, exact: bool, caps: &Caps) -> Result<CoverSolution> {
    // candidate balls with identical coverage are merged into the lowest center
    let mut covers: Vec<BitSet> = Vec::new();
    let mut centers: Vec<Vertex> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for c in g.vertices() {
        let ball = g.vertex_ball(c, beta);
        let mut hit = BitSet::new(members.len());
        for (i, m) in members.iter().enumerate() {
            if m.intersects(&ball) {
                hit.insert(i);
            }
        }
        if !hit.is_empty() && seen.insert(hit.clone()) {
            covers.push(hit);
            centers.push(c);
        }
    }
    let (cover, optimal) = if exact {
        (exact_set_cover(members.len(), &covers, caps.search_nodes)?, true)
    } else {
        (greedy_set_cover(members.len(), &covers), false)
    };
    let method = if exact { CoverMethod::SetCover } else { CoverMethod::Greedy };
    let chosen = cover.chosen.iter().map(|&i| centers[i]).collect();
    Ok(CoverSolution::from_centers(g, chosen, beta, optimal, method, cover.nodes_explored))
}

/// Whether `z` meets every member of the path family.
pub fn hits_path_family(g: &Graph, family: &PathFamily, z: &VertexSet) -> bool {
    let allowed: Vec<bool> = z.to_mask(g.vertex_count()).iter().map(|b| !b).collect();
    !has_member_within(g, family, &allowed)
}

/// Iterative deepening on the number of balls. Some ball must meet the
/// shortest member that survives the balls chosen so far, so its center is
/// within the radius of that member; branch over those centers.
fn cover_by_branching(g: &Graph, family: &PathFamily, beta: f64, caps: &Caps) -> Result<CoverSolution> {
    let upper = greedy_implicit(g, family, beta);
    // members pairwise farther than 2β apart need distinct balls
    let lower = greedy_packing(g, family, Farness::GreaterThan(2.0 * beta)).size;
    let mut nodes = 0;
    for budget in lower..upper.count {
        let mut search = Branching {
            g,
            family,
            beta,
            allowed: vec![true; g.vertex_count()],
            excluded: vec![false; g.vertex_count()],
            chosen: Vec::new(),
            nodes: 0,
            node_limit: caps.search_nodes.saturating_sub(nodes),
        };
        let found = search.run(budget)?;
        nodes += search.nodes;
        if found {
            let centers = search.chosen.into_iter().collect();
            return Ok(CoverSolution::from_centers(g, centers, beta, true, CoverMethod::WitnessBranching, nodes));
        }
    }
    Ok(CoverSolution {
        optimal: true,
        method: CoverMethod::WitnessBranching,
        nodes_explored: nodes,
        ..upper
    })
}

struct Branching<'a> {
    g: &'a Graph,
    family: &'a PathFamily,
    beta: f64,
    allowed: Vec<bool>,
    excluded: Vec<bool>,
    chosen: Vec<Vertex>,
    nodes: usize,
    node_limit: usize,
}

impl Branching<'_> {
    fn run(&mut self, budget: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Capacity {
                what: "cover search nodes",
                limit: self.node_limit,
                actual: self.nodes,
            });
        }
        let Some(path) = shortest_member_within(self.g, self.family, &self.allowed) else {
            return Ok(true);
        };
        if budget == 0 {
            return Ok(false);
        }
        let near = self.g.ball(&path.iter().copied().collect(), self.beta);
        let options: Vec<Vertex> = near.iter().filter(|&c| !self.excluded[c]).collect();
        let mut newly_excluded = Vec::new();
        let mut found = false;
        for c in options {
            let ball = self.g.vertex_ball(c, self.beta);
            let removed: Vec<Vertex> = ball.iter().filter(|&v| self.allowed[v]).collect();
            for &v in &removed {
                self.allowed[v] = false;
            }
            self.chosen.push(c);
            let res = self.run(budget - 1);
            if matches!(res, Ok(true)) {
                found = true;
                break;
            }
            self.chosen.pop();
            for &v in &removed {
                self.allowed[v] = true;
            }
            if res.is_err() {
                for &x in &newly_excluded {
                    self.excluded[x] = false;
                }
                return res;
            }
            self.excluded[c] = true;
            newly_excluded.push(c);
        }
        for x in newly_excluded {
            self.excluded[x] = false;
        }
        Ok(found)
    }
}

/// Repeatedly takes the shortest surviving member and covers it with the
/// ball, among those meeting it, that removes the most surviving vertices.
fn greedy_implicit(g: &Graph, family: &PathFamily, beta: f64) -> CoverSolution {
    let mut allowed = vec![true; g.vertex_count()];
    let mut centers = VertexSet::new();
    let mut rounds = 0;
    while let Some(path) = shortest_member_within(g, family, &allowed) {
        rounds += 1;
        let near = g.ball(&path.iter().copied().collect(), beta);
        let mut best = (0, 0);
        for c in near.iter() {
            let gain = g
                .distances_from(c)
                .iter()
                .enumerate()
                .filter(|&(v, &d)| allowed[v] && at_most(d, beta))
                .count();
            if gain > best.0 {
                best = (gain, c);
            }
        }
        for v in g.vertex_ball(best.1, beta).iter() {
            allowed[v] = false;
        }
        centers.insert(best.1);
    }
    CoverSolution::from_centers(g, centers, beta, false, CoverMethod::Greedy, rounds)
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn column(rows: usize, cols: usize, j: usize) -> VertexSet {
        (0..rows).map(|i| i * cols + j).collect()
    }

    fn lxy(g: &Graph, x: VertexSet, y: VertexSet, beta: f64) -> CoverInstance<'_> {
        CoverInstance {
            host: g,
            family: HitFamily::Paths(PathFamily::lxy(0.0, x, y)),
            radius: beta,
            mode: SolveMode::Exact,
        }
    }

    #[test]
    fn empty_and_single_path() {
        let caps = Caps::default();
        let p5 = Graph::new(5, (1..5).map(|i| (i - 1, i))).unwrap();
        let none = CoverInstance {
            host: &p5,
            family: HitFamily::Explicit(vec![]),
            radius: 0.0,
            mode: SolveMode::Exact,
        };
        assert_eq!(min_ball_hitting(&none, &caps).unwrap().count, 0);
        let one = lxy(&p5, VertexSet::from([0]), VertexSet::from([4]), 0.0);
        assert_eq!(min_ball_hitting(&one, &caps).unwrap().count, 1);
    }

    #[test]
    fn empty_member_is_rejected() {
        let g = grid(2, 2);
        let inst = CoverInstance {
            host: &g,
            family: HitFamily::Explicit(vec![VertexSet::new()]),
            radius: 0.0,
            mode: SolveMode::Exact,
        };
        assert!(matches!(min_ball_hitting(&inst, &Caps::default()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn grid_covers_by_both_routes() {
        let caps = Caps::default();
        let g = grid(3, 9);
        let (x, y) = (column(3, 9, 0), column(3, 9, 8));
        assert_eq!(min_ball_hitting(&lxy(&g, x.clone(), y.clone(), 0.0), &caps).unwrap().count, 3);
        assert_eq!(min_ball_hitting(&lxy(&g, x.clone(), y.clone(), 1.0), &caps).unwrap().count, 1);
        let big = grid(5, 9);
        let sol = min_ball_hitting(&lxy(&big, column(5, 9, 0), column(5, 9, 8), 1.0), &caps).unwrap();
        assert_eq!(sol.method, CoverMethod::WitnessBranching);
        assert!(sol.optimal);
        assert_eq!(sol.count, 2);
        let fam = PathFamily::lxy(0.0, column(5, 9, 0), column(5, 9, 8));
        assert!(hits_path_family(&big, &fam, &sol.centered.members));
    }
}
