//! Instance families: grids, the lower-bound constructions, random fixtures.

mod lemmas;
mod random;
mod tangle;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::caps::Caps;
use crate::covering::{min_ball_hitting, CoverInstance, HitFamily};
use crate::error::{Error, Result};
use crate::graph::io::GraphDocument;
use crate::graph::{Graph, VertexSet};
use crate::packing::{max_far_packing, PackingInstance, SolveMode};
use crate::paths::PathFamily;
use crate::tree::{disjoint_model_pair, min_model_hitting_set, DecompositionDocument, RootedPattern, TreeDecomposition};

pub use lemmas::{random_easy_tree_instances, random_helly_instances, EasyTreeInstance, HellyInstance};
pub use random::{random_instances, RandomConfig, RandomFamily};
pub use tangle::{random_tangle_instances, TangleInstance};

/// A `rows × cols` grid, vertex `(i, j)` at index `i·cols + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub graph: Graph,
    pub rows: usize,
    pub cols: usize,
}

impl Grid {
    pub fn vertex(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    pub fn row(&self, i: usize) -> VertexSet {
        (0..self.cols).map(|j| self.vertex(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> VertexSet {
        (0..self.rows).map(|i| self.vertex(i, j)).collect()
    }

    pub fn row_of(&self, v: usize) -> usize {
        v / self.cols
    }
}

pub fn grid(rows: usize, cols: usize) -> Result<Grid> {
    if rows == 0 || cols == 0 {
        return Err(Error::invalid(format!("grid {rows}x{cols} needs positive sides")));
    }
    let mut edges = Vec::with_capacity(2 * rows * cols);
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
    Ok(Grid {
        graph: Graph::new(rows * cols, edges)?,
        rows,
        cols,
    })
}

/// Why an annotation is expected to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// A theorem about the construction.
    Proven,
    /// Worked out for the concrete parameters.
    Computed,
    /// Follows from the definitions.
    Immediate,
    /// Recorded as measured, with nothing asserted.
    Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum Property {
    /// The largest `r`-far packing of `(ℓ, X, Y)`-paths has this size.
    FarPacking { ell: f64, r: f64, size: usize },
    /// Covering all `X`-`Y` paths needs at least this many balls.
    CoverLowerBound { radius: f64, at_least: usize },
    /// Every vertex-centered ball of the radius meets at most this many rows.
    RowsPerBall { radius: f64, at_most: usize, cols: usize },
    /// No two vertex-disjoint rooted models of the pattern.
    NoDisjointRootedModels,
    /// Fewest vertices meeting every rooted model.
    ModelHittingSize,
    /// The shipped decomposition is valid with this width.
    DecompositionWidth { width: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    #[serde(flatten)]
    pub property: Property,
    pub basis: Basis,
    /// `None` until checked, or when caps did not permit a check.
    #[serde(default)]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<serde_json::Value>,
}

impl Annotation {
    pub fn new(property: Property, basis: Basis) -> Self {
        Annotation {
            property,
            basis,
            verified: None,
            measured: None,
        }
    }
}

/// A generated graph with its designated sets and expected properties.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: String,
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(with = "graph_document")]
    pub graph: Graph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<VertexSet>,
    /// Root sets of a rooted pattern, in pattern-vertex order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionDocument>,
    pub annotations: Vec<Annotation>,
}

pub(crate) mod graph_document {
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::io::GraphDocument;
    use crate::graph::Graph;

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
        GraphDocument::from_graph(g).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Graph, D::Error> {
        GraphDocument::deserialize(d)?.into_graph().map_err(D::Error::custom)
    }
}

impl InstanceSpec {
    /// A bare instance: no designated sets and no annotations.
    pub fn new(family: &str, graph: Graph) -> Self {
        InstanceSpec {
            family: family.to_string(),
            params: BTreeMap::new(),
            graph,
            x: None,
            y: None,
            a: None,
            roots: Vec::new(),
            decomposition: None,
            annotations: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// SHA-256 of the graph, designated sets and parameters, ignoring
    /// annotation results.
    pub fn fingerprint(&self) -> String {
        let doc = serde_json::json!({
            "family": self.family,
            "params": self.params,
            "graph": GraphDocument::from_graph(&self.graph),
            "x": self.x,
            "y": self.y,
            "a": self.a,
            "roots": self.roots,
        });
        json_fingerprint(&doc)
    }

    pub fn tree_decomposition(&self) -> Result<Option<TreeDecomposition>> {
        self.decomposition.as_ref().map(TreeDecomposition::from_document).transpose()
    }

    pub fn rooted_pattern(&self) -> Result<RootedPattern> {
        match self.roots.as_slice() {
            [first, middle, last] => RootedPattern::p3(first.clone(), middle.clone(), last.clone()),
            _ => Err(Error::invalid(format!("{} root sets; a rooted path needs 3", self.roots.len()))),
        }
    }

    fn xy_family(&self, ell: f64) -> Result<PathFamily> {
        match (&self.x, &self.y) {
            (Some(x), Some(y)) => Ok(PathFamily::lxy(ell, x.clone(), y.clone())),
            _ => Err(Error::invalid("instance has no X and Y")),
        }
    }
}

/// SHA-256 of the compact JSON form, keys sorted.
pub fn json_fingerprint<T: Serialize>(value: &T) -> String {
    let doc = serde_json::to_value(value).expect("serializable");
    hex::encode(Sha256::digest(doc.to_string().as_bytes()))
}

/// The `r × n` grid with X the first column and Y the last. Distinct X
/// vertices are at distance at most `r − 1`, so no two X-Y paths are
/// `r`-far; a ball of radius `s` meets at most `2s + 1` rows while each row
/// is an X-Y path, so `⌈r/(2s+1)⌉` balls are needed.
pub fn menger_lower_bound_instance(r: usize, n: usize, s: usize) -> Result<InstanceSpec> {
    if r < 2 || n < r {
        return Err(Error::invalid(format!("need r ≥ 2 and n ≥ r, got r = {r}, n = {n}")));
    }
    let g = grid(r, n)?;
    let mut spec = InstanceSpec::new("menger_lower_bound", g.graph.clone())
        .param("r", r)
        .param("n", n)
        .param("s", s);
    spec.x = Some(g.column(0));
    spec.y = Some(g.column(n - 1));
    spec.annotations = vec![
        Annotation::new(
            Property::FarPacking {
                ell: 0.0,
                r: r as f64,
                size: 1,
            },
            Basis::Proven,
        ),
        Annotation::new(
            Property::CoverLowerBound {
                radius: s as f64,
                at_least: r.div_ceil(2 * s + 1),
            },
            Basis::Proven,
        ),
        Annotation::new(
            Property::RowsPerBall {
                radius: s as f64,
                at_most: 2 * s + 1,
                cols: n,
            },
            Basis::Proven,
        ),
    ];
    Ok(spec)
}

/// The `w × w` grid with a rooted path on three vertices: the first column,
/// the first row and the last column as root sets, in that order.
pub fn rooted_p3_grid(w: usize) -> Result<InstanceSpec> {
    if w < 3 {
        return Err(Error::invalid(format!("rooted grid needs w ≥ 3, got {w}")));
    }
    let g = grid(w, w)?;
    let mut spec = InstanceSpec::new("rooted_p3_grid", g.graph.clone()).param("w", w);
    spec.roots = vec![g.column(0), g.row(0), g.column(w - 1)];
    spec.annotations = vec![
        Annotation::new(Property::NoDisjointRootedModels, Basis::Proven),
        Annotation::new(Property::ModelHittingSize, Basis::Measured),
    ];
    Ok(spec)
}

/// Checks every annotation the caps allow, recording the outcome and the
/// measured value. Capacity errors leave `verified` unset.
pub fn verify_annotations(spec: &mut InstanceSpec, caps: &Caps) -> Result<()> {
    let mut annotations = std::mem::take(&mut spec.annotations);
    let mut result = Ok(());
    for ann in &mut annotations {
        match check(spec, &ann.property, caps) {
            Ok((verified, measured)) => {
                ann.verified = verified;
                ann.measured = Some(measured);
            }
            Err(e) if e.is_capacity() => {
                ann.verified = None;
                ann.measured = None;
            }
            Err(e) => {
                result = Err(e);
                break;
            }
        }
    }
    spec.annotations = annotations;
    result
}

fn check(spec: &InstanceSpec, property: &Property, caps: &Caps) -> Result<(Option<bool>, serde_json::Value)> {
    let g = &spec.graph;
    match property {
        Property::FarPacking { ell, r, size } => {
            let inst = PackingInstance {
                host: g,
                family: spec.xy_family(*ell)?,
                r: *r,
                mode: SolveMode::Exact,
            };
            let found = max_far_packing(&inst, caps)?.size;
            Ok((Some(found == *size), found.into()))
        }
        Property::CoverLowerBound { radius, at_least } => {
            let inst = CoverInstance {
                host: g,
                family: HitFamily::Paths(spec.xy_family(0.0)?),
                radius: *radius,
                mode: SolveMode::Exact,
            };
            let found = min_ball_hitting(&inst, caps)?.count;
            Ok((Some(found >= *at_least), found.into()))
        }
        Property::RowsPerBall { radius, at_most, cols } => {
            let worst = g
                .vertices()
                .map(|v| {
                    let rows: VertexSet = g.vertex_ball(v, *radius).iter().map(|u| u / cols).collect();
                    rows.len()
                })
                .max()
                .unwrap_or(0);
            Ok((Some(worst <= *at_most), worst.into()))
        }
        Property::NoDisjointRootedModels => {
            let pair = disjoint_model_pair(g, &spec.rooted_pattern()?, caps)?;
            Ok((Some(pair.is_none()), pair.is_some().into()))
        }
        Property::ModelHittingSize => {
            let size = min_model_hitting_set(g, &spec.rooted_pattern()?, 0.0, caps)?.len();
            Ok((None, size.into()))
        }
        Property::DecompositionWidth { width } => {
            let td = spec
                .tree_decomposition()?
                .ok_or_else(|| Error::invalid("instance ships no decomposition"))?;
            let valid = td.validate(g, &g.all_vertices()).is_ok();
            Ok((Some(valid && td.width() <= *width), td.width().into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids() {
        let g = grid(1, 1).unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (1, 0));
        let c4 = grid(2, 2).unwrap().graph;
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));
        let g = grid(3, 4).unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (12, 17));
        assert_eq!(g.column(3), VertexSet::from([3, 7, 11]));
        assert!(grid(0, 3).is_err());
    }

    #[test]
    fn lower_bound_annotations_hold() {
        let caps = Caps::default();
        for (r, n) in [(3, 9), (2, 2)] {
            let mut spec = menger_lower_bound_instance(r, n, 1).unwrap();
            verify_annotations(&mut spec, &caps).unwrap();
            for a in &spec.annotations {
                assert_eq!(a.verified, Some(true), "{r}x{n}: {a:?}");
            }
        }
        let spec = menger_lower_bound_instance(5, 25, 1).unwrap();
        let Property::CoverLowerBound { at_least, .. } = spec.annotations[1].property else { panic!() };
        assert_eq!(at_least, 2);
        assert!(menger_lower_bound_instance(3, 2, 1).is_err());
    }

    #[test]
    fn rooted_grid_three() {
        let mut spec = rooted_p3_grid(3).unwrap();
        verify_annotations(&mut spec, &Caps::default()).unwrap();
        assert_eq!(spec.annotations[0].verified, Some(true));
        assert!(spec.annotations[1].measured.is_some());
    }

    #[test]
    fn json_round_trip_and_fingerprint() {
        let spec = rooted_p3_grid(3).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"basis\":\"proven\""), "{json}");
        assert!(json.contains("\"property\":\"no_disjoint_rooted_models\""));
        let back: InstanceSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.fingerprint(), spec.fingerprint());
        assert_ne!(rooted_p3_grid(4).unwrap().fingerprint(), spec.fingerprint());
    }
}
