//! Seeded inputs for the tree-Helly and tree-decomposition hitting lemmas.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::random::{random_instances, RandomConfig, RandomFamily};
use crate::error::Result;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::tree::{DecompositionDocument, EasyTreeParams, ExchangeableFamily, TreeDecomposition};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HellyInstance {
    #[serde(with = "super::graph_document")]
    pub tree: Graph,
    pub subtrees: Vec<VertexSet>,
    pub k: usize,
}

/// Random trees on `1..=max_nodes` nodes (each node hangs off an earlier
/// one) carrying `1..=max_subtrees` random subtrees, with `k ∈ 1..=max_k`.
pub fn random_helly_instances(
    seed: u64,
    count: usize,
    max_nodes: usize,
    max_subtrees: usize,
    max_k: usize,
) -> Vec<HellyInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_nodes.max(1));
            let tree = Graph::new(n, (1..n).map(|v| (rng.gen_range(0..v), v))).expect("parents precede children");
            let m = rng.gen_range(1..=max_subtrees.max(1));
            let subtrees = (0..m)
                .map(|_| {
                    let size = rng.gen_range(1..=n.min(5));
                    grow_connected(&mut rng, &tree, size)
                })
                .collect();
            HellyInstance {
                tree,
                subtrees,
                k: rng.gen_range(1..=max_k.max(1)),
            }
        })
        .collect()
}

/// A partial 2-tree with its decomposition and an exchangeable family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EasyTreeInstance {
    #[serde(with = "super::graph_document")]
    pub graph: Graph,
    pub decomposition: DecompositionDocument,
    pub family: ExchangeableFamily,
    pub params: EasyTreeParams,
}

impl EasyTreeInstance {
    pub fn tree_decomposition(&self) -> Result<TreeDecomposition> {
        TreeDecomposition::from_document(&self.decomposition)
    }
}

/// Partial 2-trees on 4 to 12 vertices. Every other instance has
/// two-component members, built as all disjoint pairs from two lists of
/// connected sets so that the family is closed under exchange. Bags have at
/// most three vertices, so `ξ = 3`, `η = 0`; `k ∈ {1,2,3}`, `r ∈ {0,1,2}`.
pub fn random_easy_tree_instances(seed: u64, count: usize) -> Result<Vec<EasyTreeInstance>> {
    let config = RandomConfig {
        family: RandomFamily::PartialKTree { k: 2 },
        min_vertices: 4,
        max_vertices: 12,
        weighted: false,
    };
    let specs = random_instances(seed, count, &config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe457);
    let mut out = Vec::with_capacity(count);
    for (i, spec) in specs.into_iter().enumerate() {
        let decomposition = spec.decomposition.expect("partial k-trees ship a decomposition");
        let g = spec.graph;
        let family = if i % 2 == 0 {
            let members = (0..rng.gen_range(1..=8))
                .map(|_| {
                    let size = rng.gen_range(1..=4);
                    grow_connected(&mut rng, &g, size)
                })
                .collect();
            ExchangeableFamily::connected(dedup(members))?
        } else {
            let mut list = || -> Vec<VertexSet> {
                let members = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let size = rng.gen_range(1..=3);
                        grow_connected(&mut rng, &g, size)
                    })
                    .collect();
                dedup(members)
            };
            let (first, second) = (list(), list());
            let mut members = Vec::new();
            for a in &first {
                for b in &second {
                    if a.is_disjoint(b) {
                        members.push(vec![a.clone(), b.clone()]);
                    }
                }
            }
            ExchangeableFamily::new(2, members)?
        };
        let params = EasyTreeParams {
            r: rng.gen_range(0..=2) as f64,
            k: rng.gen_range(1..=3),
            xi: 3,
            eta: 0.0,
        };
        out.push(EasyTreeInstance {
            graph: g,
            decomposition,
            family,
            params,
        });
    }
    Ok(out)
}

fn dedup(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort();
    sets.dedup();
    sets
}

/// A connected set of at most `size` vertices grown from a random start.
fn grow_connected(rng: &mut ChaCha8Rng, g: &Graph, size: usize) -> VertexSet {
    let mut set = VertexSet::singleton(rng.gen_range(0..g.vertex_count()));
    while set.len() < size {
        let frontier: Vec<Vertex> = g.open_neighborhood(&set).to_vec();
        if frontier.is_empty() {
            break;
        }
        set.insert(frontier[rng.gen_range(0..frontier.len())]);
    }
    set
}
