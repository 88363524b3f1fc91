//! Seeded inputs for the tangle trichotomy.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::random::{random_instances, RandomConfig, RandomFamily};
use crate::caps::Caps;
use crate::error::Result;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::packing::{max_far_subfamily, Farness};
use crate::tangle::TrichotomyParams;

/// A host subgraph `G[host]`, connected members inside it, and a set `z`
/// holding the neighborhood of the host, with parameters meeting every
/// hypothesis of the trichotomy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangleInstance {
    #[serde(with = "super::graph_document")]
    pub graph: Graph,
    pub host: VertexSet,
    pub family: Vec<VertexSet>,
    pub z: VertexSet,
    pub params: TrichotomyParams,
}

/// `count` instances on at most `max_vertices` vertices with `θ ∈ {1, 2}`
/// and `k ∈ {2, 3}`. Members are dropped from the end until fewer than `k`
/// of them are pairwise `r`-far; `z` is certified by its own vertices.
pub fn random_tangle_instances(seed: u64, count: usize, max_vertices: usize) -> Result<Vec<TangleInstance>> {
    let config = RandomConfig {
        family: RandomFamily::General {
            edge_probability: 0.35,
            connected: false,
        },
        min_vertices: 3.min(max_vertices),
        max_vertices,
        weighted: false,
    };
    let graphs = random_instances(seed, count, &config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a9e);
    let caps = Caps::default();
    let mut out = Vec::with_capacity(count);
    for spec in graphs {
        let g = spec.graph;
        let n = g.vertex_count();
        let host: VertexSet = if rng.gen_bool(0.5) {
            g.all_vertices()
        } else {
            let drop = rng.gen_range(1..=n.min(3) - 1);
            let mut order: Vec<Vertex> = g.vertices().collect();
            order.shuffle(&mut rng);
            order[drop..].iter().copied().collect()
        };
        let z = g.open_neighborhood(&host);
        let r = *[1.0, 2.0].choose(&mut rng).expect("nonempty");
        let r_prime = r / 2.0 + *[0.0, 0.5].choose(&mut rng).expect("nonempty");
        let k = rng.gen_range(2..=3);
        let theta = rng.gen_range(1..=2);
        let members = rng.gen_range(2..=6);
        let mut family: Vec<VertexSet> = (0..members).map(|_| connected_piece(&g, &host, &mut rng)).collect();
        while max_far_subfamily(&g, &family, Farness::AtLeast(r), caps.search_nodes)?.members.len() >= k {
            family.pop();
        }
        out.push(TangleInstance {
            params: TrichotomyParams {
                k,
                theta,
                r,
                r_prime,
                xi: z.len(),
                eta: 0.0,
            },
            graph: g,
            host,
            family,
            z,
        });
    }
    Ok(out)
}

/// One to three vertices of `host` grown from a random start inside it.
fn connected_piece(g: &Graph, host: &VertexSet, rng: &mut ChaCha8Rng) -> VertexSet {
    let starts = host.to_vec();
    let mut piece = VertexSet::singleton(*starts.choose(rng).expect("nonempty host"));
    let target = rng.gen_range(1..=3);
    while piece.len() < target {
        let frontier: Vec<Vertex> = piece
            .iter()
            .flat_map(|v| g.neighbors(v))
            .filter(|&u| host.contains(u) && !piece.contains(u))
            .collect();
        match frontier.choose(rng) {
            Some(&u) => {
                piece.insert(u);
            }
            None => break,
        }
    }
    piece
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_well_formed() {
        let a = random_tangle_instances(4, 15, 9).unwrap();
        assert_eq!(a, random_tangle_instances(4, 15, 9).unwrap());
        for t in &a {
            assert!(t.graph.vertex_count() <= 9);
            assert!(t.graph.open_neighborhood(&t.host).is_subset(&t.z));
            assert!(t.family.iter().all(|m| m.is_subset(&t.host) && t.graph.induces_connected(m)));
        }
    }
}
