//! Edge-list text and JSON formats for graphs.
//!
//! Edge lists hold one `u v [weight]` per line; a line with a single id
//! declares an isolated vertex; `#` starts a comment. Either every edge
//! carries a weight or none does.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// JSON shape of a graph, in external vertex ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDocument {
            vertices: g.labels().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|&(u, v)| (g.label(u), g.label(v)))
                .collect(),
            weights: g.weights().map(<[f64]>::to_vec),
        }
    }

    /// Builds the graph; edge endpoints must be declared in `vertices`.
    pub fn into_graph(self) -> Result<Graph> {
        let mut labels = self.vertices;
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate vertex id"));
        }
        let index = |id: u64| {
            labels
                .binary_search(&id)
                .map_err(|_| Error::invalid(format!("edge endpoint {id} is not a declared vertex")))
        };
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| Ok((index(u)?, index(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Graph::from_parts(labels, edges, self.weights)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphDocument::from_graph(g)).expect("graph documents serialize")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    doc.into_graph()
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut ids = BTreeSet::new();
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut weighted: Option<bool> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let id = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| parse_err(format!("`{s}` is not a nonnegative integer id")))
        };
        match fields.as_slice() {
            [v] => {
                ids.insert(id(v)?);
            }
            [u, v, rest @ ..] if rest.len() <= 1 => {
                let (u, v) = (id(u)?, id(v)?);
                let has_weight = !rest.is_empty();
                if *weighted.get_or_insert(has_weight) != has_weight {
                    return Err(parse_err("mixed weighted and unweighted edges".into()));
                }
                if let [w] = rest {
                    let w: f64 = w
                        .parse()
                        .map_err(|_| parse_err(format!("`{w}` is not a number")))?;
                    weights.push(w);
                }
                ids.insert(u);
                ids.insert(v);
                edges.push((u, v));
            }
            _ => return Err(parse_err(format!("expected `u v [weight]`, got `{line}`"))),
        }
    }
    GraphDocument {
        vertices: ids.into_iter().collect(),
        edges,
        weights: (weighted == Some(true)).then_some(weights),
    }
    .into_graph()
}

/// Edge list that [`parse_edge_list`] reads back to an equal graph.
/// Isolated vertices are written as single-id lines.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        if g.degree(v) == 0 {
            let _ = writeln!(out, "{}", g.label(v));
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = match g.weights() {
            Some(ws) => writeln!(out, "{} {} {}", g.label(u), g.label(v), ws[e]),
            None => writeln!(out, "{} {}", g.label(u), g.label(v)),
        };
    }
    out
}
