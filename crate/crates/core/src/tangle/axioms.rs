//! Tangles and a direct check of the three axioms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::separations::enumerate_separations_within;
use crate::bits::BitSet;
use crate::caps::Caps;
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::separation::Separation;

/// A set of separations of `G[within]`, all of order below `order`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tangle {
    pub order: usize,
    pub within: VertexSet,
    #[serde(with = "pairs")]
    pub members: Vec<Separation>,
    /// Parameters the members were derived from, when built from a family.
    pub definition: Option<TangleDefinition>,
}

/// The data that determines a family tangle: a separation `(A, B)` belongs
/// to it when `A − N≤r′[V(A∩B)]` holds no member of `family − N≤r′[z]` and
/// `B − N≤r′[V(A∩B)]` holds one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangleDefinition {
    pub family: Vec<VertexSet>,
    pub r_prime: f64,
    pub z: VertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// A member is not a separation of the host, or its order is too high.
    Membership,
    /// Every low-order separation is oriented exactly once.
    T1,
    /// No three members have A-sides covering the host.
    T2,
    /// No member has `V(A) = V(host)`.
    T3,
    /// Stored members differ from the ones the definition yields.
    Definition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TangleVerdict {
    Valid,
    Violated { axiom: Axiom, witness: Vec<Separation> },
}

impl TangleVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, TangleVerdict::Valid)
    }
}

/// Serializes separations as `[[A...], [B...]]` pairs.
mod pairs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::VertexSet;
    use crate::separation::Separation;

    pub fn serialize<S: Serializer>(seps: &[Separation], s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<(&VertexSet, &VertexSet)> = seps.iter().map(|x| (&x.side_a, &x.side_b)).collect();
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Separation>, D::Error> {
        let raw: Vec<(VertexSet, VertexSet)> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|(a, b)| Separation::new(a, b)).collect())
    }
}

/// Checks the axioms over the full enumeration of low-order separations.
/// Only capacity limits produce an error; axiom failures are reported in
/// the verdict with the offending separations.
pub fn verify_tangle(g: &Graph, t: &Tangle, caps: &Caps) -> Result<TangleVerdict> {
    let all = enumerate_separations_within(g, &t.within, t.order, caps)?;
    if let Some(v) = check_axioms(g, &t.within, t.order, &t.members, &all) {
        return Ok(v);
    }
    if t.definition.is_some() {
        let mut stored = t.members.clone();
        stored.sort();
        let matches = t.rederive(g, caps)?.is_some_and(|mut m| {
            m.sort();
            m == stored
        });
        if !matches {
            return Ok(TangleVerdict::Violated {
                axiom: Axiom::Definition,
                witness: Vec::new(),
            });
        }
    }
    Ok(TangleVerdict::Valid)
}

pub(crate) fn check_axioms(
    g: &Graph,
    within: &VertexSet,
    order: usize,
    members: &[Separation],
    all: &[Separation],
) -> Option<TangleVerdict> {
    let violated = |axiom, witness| Some(TangleVerdict::Violated { axiom, witness });
    for s in members {
        if !s.is_valid_in(g, within) || s.order() >= order {
            return violated(Axiom::Membership, vec![s.clone()]);
        }
    }
    let set: BTreeSet<&Separation> = members.iter().collect();
    for s in all {
        let flip = s.flipped();
        let ok = if flip == *s {
            set.contains(s)
        } else {
            set.contains(s) != set.contains(&flip)
        };
        if !ok {
            return violated(Axiom::T1, vec![s.clone()]);
        }
    }
    for s in members {
        if s.side_a == *within {
            return violated(Axiom::T3, vec![s.clone()]);
        }
    }
    t2_violation(g, within, members).and_then(|w| violated(Axiom::T2, w))
}

/// Three members (repetition allowed) whose A-sides cover every vertex and
/// every edge of the host. Side A is induced, so an edge is covered exactly
/// when both ends lie in one A-side, and only inclusion-maximal A-sides
/// need to be tried.
fn t2_violation(g: &Graph, within: &VertexSet, members: &[Separation]) -> Option<Vec<Separation>> {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| within.contains(u) && within.contains(v))
        .collect();
    let mut maximal: Vec<&Separation> = Vec::new();
    for (i, s) in members.iter().enumerate() {
        let dominated = members.iter().enumerate().any(|(j, t)| {
            j != i && s.side_a.is_subset(&t.side_a) && (s.side_a != t.side_a || j < i)
        });
        if !dominated {
            maximal.push(s);
        }
    }
    let masks: Vec<(BitSet, BitSet)> = maximal
        .iter()
        .map(|s| {
            let mut vs = BitSet::new(n);
            for v in s.side_a.iter() {
                vs.insert(v);
            }
            let mut es = BitSet::new(edges.len());
            for (e, &(u, v)) in edges.iter().enumerate() {
                if s.side_a.contains(u) && s.side_a.contains(v) {
                    es.insert(e);
                }
            }
            (vs, es)
        })
        .collect();
    let full_v = within.len();
    let full_e = edges.len();
    for i in 0..maximal.len() {
        for j in i..maximal.len() {
            let mut v2 = masks[i].0.clone();
            v2.union_with(&masks[j].0);
            let mut e2 = masks[i].1.clone();
            e2.union_with(&masks[j].1);
            for l in j..maximal.len() {
                let mut v3 = v2.clone();
                v3.union_with(&masks[l].0);
                if v3.count() != full_v {
                    continue;
                }
                let mut e3 = e2.clone();
                e3.union_with(&masks[l].1);
                if e3.count() == full_e {
                    return Some(vec![maximal[i].clone(), maximal[j].clone(), maximal[l].clone()]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tangle(order: usize, within: VertexSet, members: Vec<Separation>) -> Tangle {
        Tangle {
            order,
            within,
            members,
            definition: None,
        }
    }

    fn sep(a: &[usize], b: &[usize]) -> Separation {
        Separation::new(a.iter().copied().collect(), b.iter().copied().collect())
    }

    #[test]
    fn empty_tangle_on_triangle_misses_the_trivial_cut() {
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = tangle(1, k3.all_vertices(), vec![]);
        let v = verify_tangle(&k3, &t, &Caps::default()).unwrap();
        assert!(matches!(v, TangleVerdict::Violated { axiom: Axiom::T1, .. }));
        let ok = tangle(1, k3.all_vertices(), vec![sep(&[], &[0, 1, 2])]);
        assert!(verify_tangle(&k3, &ok, &Caps::default()).unwrap().is_valid());
    }

    #[test]
    fn both_orientations_are_rejected() {
        let g = Graph::new(2, []).unwrap();
        let t = tangle(
            1,
            g.all_vertices(),
            vec![sep(&[], &[0, 1]), sep(&[0], &[1]), sep(&[1], &[0])],
        );
        let v = verify_tangle(&g, &t, &Caps::default()).unwrap();
        assert!(matches!(v, TangleVerdict::Violated { axiom: Axiom::T1, .. }));
    }

    #[test]
    fn three_small_sides_covering_the_host_break_t2() {
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let all = k3.all_vertices();
        // order 2: orient every cut towards the larger side
        let mut members = vec![sep(&[], &[0, 1, 2])];
        for v in 0..3 {
            members.push(sep(&[v], &[0, 1, 2]));
        }
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            members.push(sep(&[u, v], &[0, 1, 2]));
        }
        let v = verify_tangle(&k3, &tangle(3, all, members), &Caps::default()).unwrap();
        assert!(matches!(v, TangleVerdict::Violated { axiom: Axiom::T2, .. }));
    }

    #[test]
    fn serializes_as_pairs() {
        let t = tangle(1, VertexSet::from([0, 1]), vec![sep(&[], &[0, 1])]);
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"members\":[[[],[0,1]]]"), "{json}");
        let back: Tangle = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
