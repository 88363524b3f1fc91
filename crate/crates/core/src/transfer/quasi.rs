//! Quasi-isometries between finite graphs, checked pair by pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{at_most, Graph, Vertex, VertexSet};

/// A map `ι` with `d(s,t)/m − a ≤ d(ι(s),ι(t)) ≤ m·d(s,t) + a` whose image
/// is `a`-dense in the target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiIsometry {
    /// `map[v]` is the image of source vertex `v`.
    pub map: Vec<Vertex>,
    pub m: f64,
    pub a: f64,
}

impl QuasiIsometry {
    pub fn identity(n: usize) -> Self {
        QuasiIsometry {
            map: (0..n).collect(),
            m: 1.0,
            a: 0.0,
        }
    }

    /// Rejects maps that are not total functions between the vertex sets,
    /// and constants outside `m ≥ 1`, `a ≥ 0`.
    pub fn validate(&self, src: &Graph, tgt: &Graph) -> Result<()> {
        if self.map.len() != src.vertex_count() {
            return Err(Error::invalid(format!(
                "map has {} entries for {} source vertices",
                self.map.len(),
                src.vertex_count()
            )));
        }
        if let Some(&y) = self.map.iter().find(|&&y| y >= tgt.vertex_count()) {
            return Err(Error::UnknownVertex(y));
        }
        if !(self.m.is_finite() && self.m >= 1.0) {
            return Err(Error::invalid(format!("multiplicative constant {} must be ≥ 1", self.m)));
        }
        if !(self.a.is_finite() && self.a >= 0.0) {
            return Err(Error::invalid(format!("additive constant {} must be ≥ 0", self.a)));
        }
        Ok(())
    }

    pub fn image(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.map[v]).collect()
    }

    pub fn full_image(&self) -> VertexSet {
        self.map.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiIsometryVerdict {
    pub holds: bool,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub coverage_ok: bool,
    /// First source pair, in lexicographic order, breaking the lower bound.
    pub lower_violation: Option<(Vertex, Vertex)>,
    pub upper_violation: Option<(Vertex, Vertex)>,
    /// Target vertex farthest from the image, when it is beyond `a`.
    pub uncovered: Option<Vertex>,
    /// Largest distance from a target vertex to the image.
    pub coverage_radius: Option<f64>,
    /// Least additive constant valid together with the given `m`; `None`
    /// when no finite one exists.
    pub tightest_a: Option<f64>,
    /// Least multiplicative constant valid together with the given `a`.
    pub tightest_m: Option<f64>,
}

/// Checks both distance inequalities on every source pair and the density
/// of the image on every target vertex. Unreachable pairs count as distance
/// infinity on both sides.
pub fn verify_quasi_isometry(src: &Graph, tgt: &Graph, q: &QuasiIsometry) -> Result<QuasiIsometryVerdict> {
    q.validate(src, tgt)?;
    let (m, a) = (q.m, q.a);
    let mut lower_violation = None;
    let mut upper_violation = None;
    let mut slack_a = Some(0.0f64);
    let mut need_m = Some(1.0f64);
    for s in src.vertices() {
        for t in s + 1..src.vertex_count() {
            let dx = src.dist(s, t);
            let dy = tgt.dist(q.map[s], q.map[t]);
            if dx.is_infinite() && dy.is_infinite() {
                continue;
            }
            if dx.is_infinite() || dy.is_infinite() {
                let pair = Some((s, t));
                if dx.is_infinite() {
                    lower_violation = lower_violation.or(pair);
                } else {
                    upper_violation = upper_violation.or(pair);
                }
                slack_a = None;
                need_m = None;
                continue;
            }
            if !at_most(dx / m - a, dy) {
                lower_violation = lower_violation.or(Some((s, t)));
            }
            if !at_most(dy, m * dx + a) {
                upper_violation = upper_violation.or(Some((s, t)));
            }
            slack_a = slack_a.map(|x| x.max(dx / m - dy).max(dy - m * dx));
            need_m = need_m.and_then(|x| {
                let up = if dx > 0.0 { (dy - a) / dx } else { 1.0 };
                let down = if dy + a > 0.0 {
                    dx / (dy + a)
                } else if dx > 0.0 {
                    return None;
                } else {
                    1.0
                };
                Some(x.max(up).max(down))
            });
        }
    }
    let image = q.full_image();
    let mut coverage = 0.0f64;
    let mut farthest = None;
    for y in tgt.vertices() {
        let d = tgt.dist_to_set(y, &image);
        if farthest.is_none() || d > coverage {
            coverage = coverage.max(d);
            farthest = Some(y);
        }
    }
    let coverage_radius = coverage.is_finite().then_some(coverage);
    let coverage_ok = at_most(coverage, a);
    let lower_ok = lower_violation.is_none();
    let upper_ok = upper_violation.is_none();
    Ok(QuasiIsometryVerdict {
        holds: lower_ok && upper_ok && coverage_ok,
        lower_ok,
        upper_ok,
        coverage_ok,
        lower_violation,
        upper_violation,
        uncovered: if coverage_ok { None } else { farthest },
        coverage_radius,
        tightest_a: slack_a.and_then(|x| coverage_radius.map(|c| x.max(c))),
        tightest_m: if coverage_ok { need_m } else { None },
    })
}

/// Replaces every edge by a path with `s` new interior vertices and returns
/// the inclusion map, a `(s+1, ⌊(s+1)/2⌋)`-quasi-isometry. New vertices get
/// labels above the largest existing one, edge by edge.
pub fn subdivide_each_edge(g: &Graph, s: usize) -> Result<(Graph, QuasiIsometry)> {
    if g.is_weighted() {
        return Err(Error::invalid("edge subdivision expects an unweighted graph"));
    }
    let n = g.vertex_count();
    let mut labels = g.labels().to_vec();
    let next = labels.last().map_or(0, |&l| l + 1);
    let mut edges = Vec::with_capacity(g.edge_count() * (s + 1));
    for &(u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..s {
            let w = labels.len();
            labels.push(next + (w - n) as u64);
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, v));
    }
    let sub = Graph::from_parts(labels, edges, None)?;
    let q = QuasiIsometry {
        map: (0..n).collect(),
        m: (s + 1) as f64,
        a: ((s + 1) / 2) as f64,
    };
    Ok((sub, q))
}
