//! Certification that a vertex set lies in few balls of bounded radius.

use serde::{Deserialize, Serialize};

use super::{at_most, Graph, Vertex, VertexSet};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// `members ⊆ N≤radius[centers]`, with centers drawn from the host.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenteredSet {
    pub members: VertexSet,
    pub centers: VertexSet,
    pub radius: f64,
}

impl CenteredSet {
    pub fn center_count(&self) -> usize {
        self.centers.len()
    }

    /// Rechecks the containment against the host.
    pub fn holds_in(&self, g: &Graph) -> bool {
        if g.check_set(&self.members).is_err() || g.check_set(&self.centers).is_err() {
            return false;
        }
        let mask = g.ball_mask(&self.centers, self.radius);
        self.members.iter().all(|v| mask[v])
    }

    /// Whether this certificate is within a `(count, radius)` budget.
    pub fn within_budget(&self, count: usize, radius: f64) -> bool {
        self.centers.len() <= count && at_most(self.radius, radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refusal {
    /// Machine-readable reason, e.g. `exhaustive-center-search-failed`.
    pub obligation: String,
    pub mode: SearchMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    Centered(CenteredSet),
    Refused(Refusal),
}

impl Certification {
    pub fn centered(&self) -> Option<&CenteredSet> {
        match self {
            Certification::Centered(c) => Some(c),
            Certification::Refused(_) => None,
        }
    }

    pub fn is_centered(&self) -> bool {
        self.centered().is_some()
    }
}

/// Decides whether `z` is `(k, r)`-centered in `g`.
///
/// Exact mode is a complete search (refusal means no `k` centers exist);
/// heuristic mode is greedy max-coverage (refusal proves nothing). Sets of
/// at most `k` vertices are certified by themselves at radius 0 in either
/// mode, so exact mode only hits the vertex cap on nontrivial inputs.
pub fn certify_centered(
    g: &Graph,
    z: &VertexSet,
    k: usize,
    r: f64,
    mode: SearchMode,
    caps: &Caps,
) -> Result<Certification> {
    g.check_set(z)?;
    if !(r >= 0.0) {
        return Err(Error::invalid(format!("radius {r} must be nonnegative")));
    }
    if z.len() <= k {
        return Ok(Certification::Centered(CenteredSet {
            members: z.clone(),
            centers: z.clone(),
            radius: 0.0,
        }));
    }
    let centers = match mode {
        SearchMode::Exact => {
            if g.vertex_count() > caps.centered_vertices {
                return Err(Error::Capacity {
                    what: "exact centered-set search",
                    limit: caps.centered_vertices,
                    actual: g.vertex_count(),
                });
            }
            exact_centers(g, z, k, r)
        }
        SearchMode::Heuristic => greedy_centers(g, z, k, r),
    };
    Ok(match centers {
        Some(centers) => Certification::Centered(CenteredSet {
            members: z.clone(),
            centers,
            radius: r,
        }),
        None => Certification::Refused(Refusal {
            obligation: match mode {
                SearchMode::Exact => "exhaustive-center-search-failed",
                SearchMode::Heuristic => "greedy-center-search-failed",
            }
            .to_string(),
            mode,
        }),
    })
}

struct CenterSearch<'a> {
    g: &'a Graph,
    members: Vec<Vertex>,
    r: f64,
    excluded: Vec<bool>,
    chosen: Vec<Vertex>,
}

impl CenterSearch<'_> {
    fn covered(&self, v: Vertex) -> bool {
        self.chosen.iter().any(|&c| at_most(self.g.dist(c, v), self.r))
    }

    // The uncovered member farthest from the current centers; it has the
    // fewest candidate centers in practice, which keeps the branching narrow.
    fn pick(&self) -> Option<Vertex> {
        let mut best: Option<(f64, Vertex)> = None;
        for &v in &self.members {
            if self.covered(v) {
                continue;
            }
            let d = self
                .chosen
                .iter()
                .map(|&c| self.g.dist(c, v))
                .fold(f64::INFINITY, f64::min);
            if best.map_or(true, |(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.map(|(_, v)| v)
    }

    fn run(&mut self, budget: usize) -> bool {
        let Some(u) = self.pick() else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let candidates: Vec<Vertex> = self
            .g
            .vertex_ball(u, self.r)
            .iter()
            .filter(|&c| !self.excluded[c])
            .collect();
        let mut newly_excluded = Vec::new();
        let mut found = false;
        for c in candidates {
            self.chosen.push(c);
            if self.run(budget - 1) {
                found = true;
                break;
            }
            self.chosen.pop();
            // any solution through `c` was explored in this branch
            self.excluded[c] = true;
            newly_excluded.push(c);
        }
        for c in newly_excluded {
            self.excluded[c] = false;
        }
        found
    }
}

fn exact_centers(g: &Graph, z: &VertexSet, k: usize, r: f64) -> Option<VertexSet> {
    let mut search = CenterSearch {
        g,
        members: z.to_vec(),
        r,
        excluded: vec![false; g.vertex_count()],
        chosen: Vec::new(),
    };
    search
        .run(k)
        .then(|| search.chosen.iter().copied().collect())
}

fn greedy_centers(g: &Graph, z: &VertexSet, k: usize, r: f64) -> Option<VertexSet> {
    let mut uncovered = z.clone();
    let mut centers = VertexSet::new();
    while !uncovered.is_empty() {
        if centers.len() == k {
            return None;
        }
        let mut best = (0, 0);
        for c in g.vertices() {
            let gain = uncovered
                .iter()
                .filter(|&v| at_most(g.dist(c, v), r))
                .count();
            if gain > best.0 {
                best = (gain, c);
            }
        }
        let center = best.1;
        centers.insert(center);
        uncovered = uncovered
            .iter()
            .filter(|&v| !at_most(g.dist(center, v), r))
            .collect();
    }
    Some(centers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn exact(g: &Graph, z: &VertexSet, k: usize, r: f64) -> Certification {
        certify_centered(g, z, k, r, SearchMode::Exact, &Caps::default()).unwrap()
    }

    #[test]
    fn empty_set_needs_no_centers() {
        let c = exact(&path(3), &VertexSet::new(), 0, 0.0);
        assert_eq!(c.centered().unwrap().centers, VertexSet::new());
    }

    #[test]
    fn p5_examples() {
        let p5 = path(5);
        let c = exact(&p5, &VertexSet::from([0, 2]), 1, 1.0);
        assert_eq!(c.centered().unwrap().centers, VertexSet::from([1]));
        let refused = exact(&p5, &VertexSet::from([0, 4]), 1, 1.0);
        assert_eq!(
            refused,
            Certification::Refused(Refusal {
                obligation: "exhaustive-center-search-failed".into(),
                mode: SearchMode::Exact
            })
        );
    }

    #[test]
    fn exact_cap_applies_only_to_nontrivial_inputs() {
        let g = path(30);
        let z = VertexSet::from([0, 29]);
        assert!(certify_centered(&g, &z, 2, 0.0, SearchMode::Exact, &Caps::default()).is_ok());
        let err = certify_centered(&g, &z, 1, 3.0, SearchMode::Exact, &Caps::default()).unwrap_err();
        assert!(err.is_capacity());
        let h = certify_centered(&g, &z, 1, 15.0, SearchMode::Heuristic, &Caps::default()).unwrap();
        assert!(h.centered().unwrap().holds_in(&g));
    }
}
