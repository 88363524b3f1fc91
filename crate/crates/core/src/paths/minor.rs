//! Fat minor models: validation and the path-to-K2 correspondence.

use serde::{Deserialize, Serialize};

use super::{is_lxy_path, is_simple_path, PathWitness};
use crate::error::{Error, Result};
use crate::graph::{less_than, Graph, Vertex, VertexSet};

/// Branch sets per pattern vertex, connecting paths per pattern edge.
///
/// Branch sets are given by their vertex sets; a connected subgraph and the
/// subgraph its vertices induce are at the same distance from everything.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FatMinorModel {
    pub pattern_order: usize,
    pub pattern_edges: Vec<(usize, usize)>,
    pub branch_sets: Vec<VertexSet>,
    /// Parallel to `pattern_edges`.
    pub edge_paths: Vec<Vec<Vertex>>,
    pub fatness: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<VertexSet>>,
}

impl FatMinorModel {
    /// All vertices used by branch sets and edge paths.
    pub fn vertex_union(&self) -> VertexSet {
        let mut out = VertexSet::new();
        for s in &self.branch_sets {
            out.extend(s.iter());
        }
        for p in &self.edge_paths {
            out.extend(p.iter().copied());
        }
        out
    }

    fn element_vertices(&self, e: ModelElement) -> VertexSet {
        match e {
            ModelElement::Vertex(h) => self.branch_sets[h].clone(),
            ModelElement::Edge(i) => self.edge_paths[i].iter().copied().collect(),
        }
    }

    fn incident(&self, x: ModelElement, y: ModelElement) -> bool {
        match (x, y) {
            (ModelElement::Vertex(h), ModelElement::Edge(i))
            | (ModelElement::Edge(i), ModelElement::Vertex(h)) => {
                let (u, v) = self.pattern_edges[i];
                h == u || h == v
            }
            _ => false,
        }
    }
}

/// Distance between two models: distance between their vertex unions.
pub fn model_distance(g: &Graph, a: &FatMinorModel, b: &FatMinorModel) -> Result<f64> {
    g.set_distance(&a.vertex_union(), &b.vertex_union())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelElement {
    Vertex(usize),
    Edge(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyBranchSet { vertex: usize },
    Disjointness { first: usize, second: usize },
    Connectivity { vertex: usize },
    NotAPath { edge: usize },
    EdgePathEnds { edge: usize },
    Distance { first: ModelElement, second: ModelElement, distance: f64 },
    Root { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks every condition of a (rooted) fat minor model and lists each
/// violated one.
pub fn check_fat_minor(g: &Graph, m: &FatMinorModel) -> Result<ModelReport> {
    let h = m.pattern_order;
    if m.branch_sets.len() != h {
        return Err(Error::invalid(format!(
            "{} branch sets for a pattern on {h} vertices",
            m.branch_sets.len()
        )));
    }
    if m.edge_paths.len() != m.pattern_edges.len() {
        return Err(Error::invalid("one edge path per pattern edge is required"));
    }
    if m.roots.as_ref().is_some_and(|r| r.len() != h) {
        return Err(Error::invalid("one root set per pattern vertex is required"));
    }
    if !(m.fatness.is_finite() && m.fatness >= 0.0) {
        return Err(Error::invalid(format!("fatness {} must be nonnegative", m.fatness)));
    }
    let mut seen = std::collections::HashSet::new();
    for &(u, v) in &m.pattern_edges {
        if u >= h || v >= h {
            return Err(Error::invalid(format!("pattern edge {u}-{v} has an unknown end")));
        }
        if u == v {
            return Err(Error::invalid(format!("pattern has a self-loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::invalid(format!("pattern has parallel edges {u}-{v}")));
        }
    }
    for s in &m.branch_sets {
        g.check_set(s)?;
    }
    for p in &m.edge_paths {
        for &v in p {
            g.check_vertex(v)?;
        }
    }
    if let Some(roots) = &m.roots {
        for r in roots {
            g.check_set(r)?;
        }
    }

    let mut violations = Vec::new();
    for (i, s) in m.branch_sets.iter().enumerate() {
        if s.is_empty() {
            violations.push(Violation::EmptyBranchSet { vertex: i });
        } else if !g.induces_connected(s) {
            violations.push(Violation::Connectivity { vertex: i });
        }
    }
    for i in 0..h {
        for j in i + 1..h {
            if m.branch_sets[i].intersects(&m.branch_sets[j]) {
                violations.push(Violation::Disjointness { first: i, second: j });
            }
        }
    }
    for (i, (&(u, v), p)) in m.pattern_edges.iter().zip(&m.edge_paths).enumerate() {
        if !is_simple_path(g, p) {
            violations.push(Violation::NotAPath { edge: i });
            continue;
        }
        let (a, b) = (p[0], *p.last().unwrap());
        let (su, sv) = (&m.branch_sets[u], &m.branch_sets[v]);
        if !((su.contains(a) && sv.contains(b)) || (su.contains(b) && sv.contains(a))) {
            violations.push(Violation::EdgePathEnds { edge: i });
        }
    }
    let elements: Vec<ModelElement> = (0..h)
        .map(ModelElement::Vertex)
        .chain((0..m.pattern_edges.len()).map(ModelElement::Edge))
        .collect();
    let sets: Vec<VertexSet> = elements.iter().map(|&e| m.element_vertices(e)).collect();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if m.incident(elements[i], elements[j]) || sets[i].is_empty() || sets[j].is_empty() {
                continue;
            }
            let d = g.set_distance_unchecked(&sets[i], &sets[j]);
            if less_than(d, m.fatness) {
                violations.push(Violation::Distance {
                    first: elements[i],
                    second: elements[j],
                    distance: d,
                });
            }
        }
    }
    if let Some(roots) = &m.roots {
        for (i, (s, r)) in m.branch_sets.iter().zip(roots).enumerate() {
            if !s.intersects(r) {
                violations.push(Violation::Root { vertex: i });
            }
        }
    }
    Ok(ModelReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// The rooted K2 model of an (ℓ,X,Y)-path: its X-end, its Y-end, and the
/// path itself as the connecting edge path.
pub fn lxy_path_to_rooted_k2(
    g: &Graph,
    p: &PathWitness,
    ell: f64,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<FatMinorModel> {
    if !is_lxy_path(g, p, ell, x, y) {
        return Err(Error::invalid("not an (ℓ,X,Y)-path"));
    }
    if p.end_a == p.end_b {
        return Err(Error::invalid(
            "a single-vertex path has no K2 model: two disjoint branch sets are needed",
        ));
    }
    let (x_end, y_end, seq) = if x.contains(p.end_a) && y.contains(p.end_b) {
        (p.end_a, p.end_b, p.sequence.clone())
    } else {
        let mut rev = p.sequence.clone();
        rev.reverse();
        (p.end_b, p.end_a, rev)
    };
    Ok(FatMinorModel {
        pattern_order: 2,
        pattern_edges: vec![(0, 1)],
        branch_sets: vec![VertexSet::singleton(x_end), VertexSet::singleton(y_end)],
        edge_paths: vec![seq],
        fatness: ell,
        roots: Some(vec![x.clone(), y.clone()]),
    })
}
