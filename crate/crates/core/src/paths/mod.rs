//! X-Y paths, (ℓ,X,Y)-paths, A-paths and fat minor models.

mod minimal;
pub mod minor;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{at_least, Graph, Vertex, VertexSet};

pub use minimal::minimal_paths;
pub use minor::{check_fat_minor, lxy_path_to_rooted_k2, model_distance, FatMinorModel, ModelElement, ModelReport, Violation};

/// A simple path together with its ends and the distance between them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathWitness {
    pub sequence: Vec<Vertex>,
    pub end_a: Vertex,
    pub end_b: Vertex,
    pub endpoint_distance: f64,
}

impl PathWitness {
    /// Validates `sequence` as a simple path of `g`, keeping its orientation.
    pub fn new(g: &Graph, sequence: Vec<Vertex>) -> Result<PathWitness> {
        let (&end_a, &end_b) = match (sequence.first(), sequence.last()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::EmptySet("path")),
        };
        for &v in &sequence {
            g.check_vertex(v)?;
        }
        if !is_simple_path(g, &sequence) {
            return Err(Error::invalid(format!("{sequence:?} is not a simple path")));
        }
        Ok(PathWitness {
            endpoint_distance: g.dist(end_a, end_b),
            sequence,
            end_a,
            end_b,
        })
    }

    pub(crate) fn from_trusted(g: &Graph, sequence: Vec<Vertex>) -> PathWitness {
        let end_a = sequence[0];
        let end_b = *sequence.last().unwrap();
        PathWitness {
            endpoint_distance: g.dist(end_a, end_b),
            sequence,
            end_a,
            end_b,
        }
    }

    /// Number of edges.
    pub fn hop_length(&self) -> usize {
        self.sequence.len() - 1
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.sequence.iter().copied().collect()
    }

    /// The orientation whose vertex sequence is lexicographically smaller.
    pub fn canonical(mut self) -> PathWitness {
        if self.end_b < self.end_a {
            self.sequence.reverse();
            std::mem::swap(&mut self.end_a, &mut self.end_b);
        }
        self
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        !self.sequence.is_empty()
            && self.sequence.iter().all(|&v| v < g.vertex_count())
            && is_simple_path(g, &self.sequence)
            && self.end_a == self.sequence[0]
            && self.end_b == *self.sequence.last().unwrap()
    }
}

/// Distinct vertices, consecutive ones adjacent.
pub fn is_simple_path(g: &Graph, sequence: &[Vertex]) -> bool {
    if sequence.is_empty() || sequence.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let mut seen = vec![false; g.vertex_count()];
    for &v in sequence {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    sequence.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// A family of paths described by which end pairs are allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathFamily {
    /// Paths with one end in `x`, the other in `y`, ends at distance ≥ `ell`.
    Lxy { ell: f64, x: VertexSet, y: VertexSet },
    /// Paths between two distinct vertices of `a`.
    APaths { a: VertexSet },
}

impl PathFamily {
    pub fn lxy(ell: f64, x: VertexSet, y: VertexSet) -> Self {
        PathFamily::Lxy { ell, x, y }
    }

    pub fn a_paths(a: VertexSet) -> Self {
        PathFamily::APaths { a }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        match self {
            PathFamily::Lxy { ell, x, y } => {
                if !(ell.is_finite() && *ell >= 0.0) {
                    return Err(Error::invalid(format!("path threshold {ell} must be nonnegative")));
                }
                g.check_set(x)?;
                g.check_set(y)
            }
            PathFamily::APaths { a } => g.check_set(a),
        }
    }

    /// Vertices that can be an end of a member.
    pub fn end_candidates(&self) -> VertexSet {
        match self {
            PathFamily::Lxy { x, y, .. } => x.union(y),
            PathFamily::APaths { a } => a.clone(),
        }
    }

    /// Whether a path with ends `s` and `t` (in either order) belongs.
    pub fn eligible(&self, g: &Graph, s: Vertex, t: Vertex) -> bool {
        match self {
            PathFamily::Lxy { ell, x, y } => {
                ((x.contains(s) && y.contains(t)) || (x.contains(t) && y.contains(s)))
                    && at_least(g.dist(s, t), *ell)
            }
            PathFamily::APaths { a } => s != t && a.contains(s) && a.contains(t),
        }
    }

    pub fn contains(&self, g: &Graph, sequence: &[Vertex]) -> bool {
        is_simple_path(g, sequence) && self.eligible(g, sequence[0], *sequence.last().unwrap())
    }

    /// The same family after multiplying all edge lengths by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        match self {
            PathFamily::Lxy { ell, x, y } => PathFamily::lxy(ell * factor, x.clone(), y.clone()),
            other => other.clone(),
        }
    }

    pub(crate) fn eligibility_matrix(&self, g: &Graph) -> Vec<Vec<bool>> {
        let n = g.vertex_count();
        let ends = self.end_candidates();
        let mut m = vec![vec![false; n]; n];
        for s in ends.iter() {
            for t in ends.iter() {
                m[s][t] = self.eligible(g, s, t);
            }
        }
        m
    }
}

/// One end in `x`, the other (possibly the same vertex) in `y`, ends at
/// distance at least `ell`. Interior vertices are unconstrained.
pub fn is_lxy_path(g: &Graph, p: &PathWitness, ell: f64, x: &VertexSet, y: &VertexSet) -> bool {
    p.is_valid_in(g)
        && ((x.contains(p.end_a) && y.contains(p.end_b)) || (x.contains(p.end_b) && y.contains(p.end_a)))
        && at_least(g.dist(p.end_a, p.end_b), ell)
}

/// Both ends in `a` and distinct.
pub fn is_a_path(g: &Graph, p: &PathWitness, a: &VertexSet) -> bool {
    p.is_valid_in(g) && p.end_a != p.end_b && a.contains(p.end_a) && a.contains(p.end_b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathEnumeration {
    pub paths: Vec<PathWitness>,
    pub truncated: bool,
}

/// All simple (ℓ,X,Y)-paths, one orientation each, in lexicographic order.
pub fn enumerate_paths(
    g: &Graph,
    ell: f64,
    x: &VertexSet,
    y: &VertexSet,
    cap: Option<usize>,
    caps: &Caps,
) -> Result<PathEnumeration> {
    enumerate_family(g, &PathFamily::lxy(ell, x.clone(), y.clone()), cap, caps)
}

/// All simple members of `family`, one orientation each, in lexicographic
/// order. With `cap`, the first `cap` paths are returned and truncation is
/// flagged; without it, graphs above the path cap are refused.
pub fn enumerate_family(
    g: &Graph,
    family: &PathFamily,
    cap: Option<usize>,
    caps: &Caps,
) -> Result<PathEnumeration> {
    family.validate(g)?;
    if cap.is_none() && g.vertex_count() > caps.path_vertices {
        return Err(Error::Capacity {
            what: "path enumeration",
            limit: caps.path_vertices,
            actual: g.vertex_count(),
        });
    }
    let mut out = Vec::new();
    let mut truncated = false;
    let eligible = family.eligibility_matrix(g);
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = Vec::new();
    for s in family.end_candidates().iter() {
        path.push(s);
        on_path[s] = true;
        let done = extend_all(g, &eligible, &mut path, &mut on_path, &mut out, cap, &mut truncated);
        on_path[s] = false;
        path.pop();
        if done {
            break;
        }
    }
    Ok(PathEnumeration {
        paths: out,
        truncated,
    })
}

// Depth-first in ascending neighbor order, so output is lexicographic.
// Returns true once the cap is hit.
fn extend_all(
    g: &Graph,
    eligible: &[Vec<bool>],
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<PathWitness>,
    cap: Option<usize>,
    truncated: &mut bool,
) -> bool {
    let s = path[0];
    let t = *path.last().unwrap();
    if s <= t && eligible[s][t] {
        if cap.is_some_and(|c| out.len() >= c) {
            *truncated = true;
            return true;
        }
        out.push(PathWitness::from_trusted(g, path.clone()));
    }
    for w in g.neighbors(t) {
        if on_path[w] {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        let done = extend_all(g, eligible, path, on_path, out, cap, truncated);
        path.pop();
        on_path[w] = false;
        if done {
            return true;
        }
    }
    false
}

/// Breadth-first hop distances inside `allowed`.
pub(crate) fn hop_distances(g: &Graph, source: Vertex, allowed: &[bool]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    if !allowed[source] {
        return dist;
    }
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if allowed[w] && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Whether some member of `family` lives entirely inside `allowed`.
pub fn has_member_within(g: &Graph, family: &PathFamily, allowed: &[bool]) -> bool {
    let (comp, _) = g.component_labels(allowed);
    let ends: Vec<Vertex> = family.end_candidates().iter().filter(|&v| allowed[v]).collect();
    ends.iter().any(|&s| {
        ends.iter()
            .any(|&t| s <= t && comp[s] == comp[t] && family.eligible(g, s, t))
    })
}

/// Fewest-hop member of `family` inside `allowed`; ties go to the
/// lexicographically smallest canonical vertex sequence.
pub fn shortest_member_within(g: &Graph, family: &PathFamily, allowed: &[bool]) -> Option<Vec<Vertex>> {
    let ends: Vec<Vertex> = family.end_candidates().iter().filter(|&v| allowed[v]).collect();
    let rows: Vec<Vec<usize>> = ends.iter().map(|&s| hop_distances(g, s, allowed)).collect();
    let mut best_hops = usize::MAX;
    let mut pairs = Vec::new();
    for (i, &s) in ends.iter().enumerate() {
        for &t in &ends {
            let hops = rows[i][t];
            if s > t || hops == usize::MAX || hops > best_hops || !family.eligible(g, s, t) {
                continue;
            }
            if hops < best_hops {
                best_hops = hops;
                pairs.clear();
            }
            pairs.push((s, t));
        }
    }
    pairs
        .into_iter()
        .map(|(s, t)| {
            let to_t = &rows[ends.binary_search(&t).unwrap()];
            lex_first_geodesic(g, s, to_t, allowed)
        })
        .min()
}

// Smallest-neighbor walk down the hop distances toward the target.
fn lex_first_geodesic(g: &Graph, s: Vertex, to_target: &[usize], allowed: &[bool]) -> Vec<Vertex> {
    let mut path = vec![s];
    let mut cur = s;
    while to_target[cur] > 0 {
        cur = g
            .neighbors(cur)
            .find(|&w| allowed[w] && to_target[w] + 1 == to_target[cur])
            .expect("a neighbor one step closer exists");
        path.push(cur);
    }
    path
}

/// Minimum over pairs of paths of their set distance; infinity for fewer than two.
pub fn min_pairwise_distance(g: &Graph, sets: &[VertexSet]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            best = best.min(g.set_distance_unchecked(a, b));
        }
    }
    best
}

/// Whether every pair of `sets` is at distance at least `r`.
pub fn pairwise_at_least(g: &Graph, sets: &[VertexSet], r: f64) -> bool {
    at_least(min_pairwise_distance(g, sets), r)
}

/// Whether `z` meets every path in `paths`.
pub fn hits_all(z: &VertexSet, paths: &[Vec<Vertex>]) -> bool {
    paths.iter().all(|p| p.iter().any(|&v| z.contains(v)))
}
