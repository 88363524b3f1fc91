//! Seeded random fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Annotation, Basis, InstanceSpec, Property};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::tree::TreeDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RandomFamily {
    /// Each pair joined with the given probability; with `connected`, a
    /// random spanning tree is added first.
    General { edge_probability: f64, connected: bool },
    /// A random k-tree with each non-tree edge kept with probability 2/3,
    /// shipped with its width-k decomposition.
    PartialKTree { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomConfig {
    pub family: RandomFamily,
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Draw edge lengths from {1/2, 1, 3/2, 2, 3} instead of unit lengths.
    pub weighted: bool,
}

const LENGTHS: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 3.0];

/// `count` instances from one ChaCha8 stream seeded with `seed`. Each gets
/// random nonempty X, Y and A of at most three vertices.
pub fn random_instances(seed: u64, count: usize, config: &RandomConfig) -> Result<Vec<InstanceSpec>> {
    if config.min_vertices == 0 || config.min_vertices > config.max_vertices {
        return Err(Error::invalid(format!(
            "vertex range {}..={} is empty or starts at 0",
            config.min_vertices, config.max_vertices
        )));
    }
    if let RandomFamily::General { edge_probability, .. } = config.family {
        if !(0.0..=1.0).contains(&edge_probability) {
            return Err(Error::invalid(format!("edge probability {edge_probability} outside [0, 1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| one(&mut rng, config, seed, i)).collect()
}

fn one(rng: &mut ChaCha8Rng, config: &RandomConfig, seed: u64, index: usize) -> Result<InstanceSpec> {
    let n = rng.gen_range(config.min_vertices..=config.max_vertices);
    let (edges, decomposition, name) = match config.family {
        RandomFamily::General {
            edge_probability,
            connected,
        } => (general(rng, n, edge_probability, connected), None, "random_general"),
        RandomFamily::PartialKTree { k } => {
            let (edges, td) = partial_k_tree(rng, n, k)?;
            (edges, Some(td), "random_partial_k_tree")
        }
    };
    let graph = if config.weighted {
        let weighted: Vec<_> = edges
            .iter()
            .map(|&(u, v)| (u, v, *LENGTHS.choose(rng).expect("nonempty")))
            .collect();
        Graph::weighted(n, weighted)?
    } else {
        Graph::new(n, edges)?
    };
    let mut spec = InstanceSpec::new(name, graph)
        .param("seed", seed)
        .param("index", index)
        .param("family", serde_json::to_value(config.family).expect("serializable"));
    spec.x = Some(subset(rng, n));
    spec.y = Some(subset(rng, n));
    spec.a = Some(subset(rng, n));
    if let Some(td) = decomposition {
        if let RandomFamily::PartialKTree { k } = config.family {
            spec.annotations
                .push(Annotation::new(Property::DecompositionWidth { width: k }, Basis::Immediate));
        }
        spec.decomposition = Some(td.to_document());
    }
    Ok(spec)
}

fn subset(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    let size = rng.gen_range(1..=n.min(3));
    rand::seq::index::sample(rng, n, size).into_iter().collect()
}

fn general(rng: &mut ChaCha8Rng, n: usize, p: f64, connected: bool) -> Vec<(Vertex, Vertex)> {
    let mut edges = std::collections::BTreeSet::new();
    if connected {
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(rng);
        for i in 1..n {
            let j = rng.gen_range(0..i);
            let (u, v) = (order[i], order[j]);
            edges.insert((u.min(v), u.max(v)));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    edges.into_iter().collect()
}

/// A k-tree grown vertex by vertex onto random k-cliques, then thinned.
/// Bag `i` holds vertex `k + i` with the clique it was attached to.
fn partial_k_tree(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Result<(Vec<(Vertex, Vertex)>, TreeDecomposition)> {
    let base = n.min(k + 1);
    let mut edges = Vec::new();
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    let mut bags: Vec<VertexSet> = vec![(0..base).collect()];
    let mut tree_edges = Vec::new();
    // (clique, bag containing it)
    let mut cliques: Vec<(Vec<Vertex>, usize)> = Vec::new();
    if base == k + 1 {
        for skip in 0..base {
            cliques.push(((0..base).filter(|&u| u != skip).collect(), 0));
        }
    }
    for v in base..n {
        let (clique, home) = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &clique {
            edges.push((u, v));
        }
        let bag_id = bags.len();
        let mut bag: VertexSet = clique.iter().copied().collect();
        bag.insert(v);
        bags.push(bag);
        tree_edges.push((home, bag_id));
        for skip in 0..clique.len() {
            let mut c: Vec<Vertex> = clique.iter().copied().filter(|&u| u != clique[skip]).collect();
            c.push(v);
            c.sort_unstable();
            cliques.push((c, bag_id));
        }
    }
    let kept = edges.into_iter().filter(|_| rng.gen_bool(2.0 / 3.0)).collect();
    let tree = Graph::new(bags.len(), tree_edges)?;
    Ok((kept, TreeDecomposition::new(tree, bags)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(family: RandomFamily) -> RandomConfig {
        RandomConfig {
            family,
            min_vertices: 4,
            max_vertices: 10,
            weighted: false,
        }
    }

    #[test]
    fn empty_and_deterministic() {
        let c = config(RandomFamily::General {
            edge_probability: 0.3,
            connected: true,
        });
        assert!(random_instances(1, 0, &c).unwrap().is_empty());
        let a = random_instances(9, 20, &c).unwrap();
        let b = random_instances(9, 20, &c).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.graph.is_connected()));
        assert_ne!(a, random_instances(10, 20, &c).unwrap());
    }

    #[test]
    fn partial_two_trees_ship_valid_decompositions() {
        for spec in random_instances(3, 30, &config(RandomFamily::PartialKTree { k: 2 })).unwrap() {
            let td = spec.tree_decomposition().unwrap().unwrap();
            td.validate(&spec.graph, &spec.graph.all_vertices()).unwrap();
            assert!(td.width() <= 2);
        }
    }

    #[test]
    fn weighted_lengths_come_from_the_palette() {
        let c = RandomConfig {
            weighted: true,
            ..config(RandomFamily::General {
                edge_probability: 0.5,
                connected: false,
            })
        };
        for spec in random_instances(5, 10, &c).unwrap() {
            for e in 0..spec.graph.edge_count() {
                assert!(LENGTHS.contains(&spec.graph.edge_length(e)));
            }
        }
    }
}
