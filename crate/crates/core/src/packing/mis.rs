//! Maximum independent set of a conflict graph by branch and bound.
//!
//! Searches for a maximum clique of the complement with bitset candidate
//! sets. The bound at each node is a greedy coloring of the complement,
//! which is a clique cover of the conflict graph.

use crate::bits::BitSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSet {
    /// Sorted indices into the input.
    pub members: Vec<usize>,
    pub nodes_explored: usize,
}

/// `conflicts[i]` holds the items conflicting with item `i` (symmetric,
/// without `i` itself). The result depends only on the conflict relation
/// and the item order.
pub fn max_independent_set(conflicts: &[BitSet], node_limit: usize) -> Result<IndependentSet> {
    let n = conflicts.len();
    if n == 0 {
        return Ok(IndependentSet {
            members: Vec::new(),
            nodes_explored: 0,
        });
    }
    let degree: Vec<usize> = conflicts.iter().map(|c| n - 1 - c.count()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    // compatibility adjacency in relabeled positions
    let mut compatible = vec![BitSet::new(n); n];
    for (p, &v) in order.iter().enumerate() {
        for (q, &w) in order.iter().enumerate() {
            if p != q && !conflicts[v].contains(w) {
                compatible[p].insert(q);
            }
        }
    }
    let mut search = CliqueSearch {
        compatible: &compatible,
        best: Vec::new(),
        nodes: 0,
        node_limit,
    };
    let mut clique = Vec::new();
    search.expand(&mut clique, BitSet::full(n))?;
    let mut members: Vec<usize> = search.best.iter().map(|&p| order[p]).collect();
    members.sort_unstable();
    Ok(IndependentSet {
        members,
        nodes_explored: search.nodes,
    })
}

struct CliqueSearch<'a> {
    compatible: &'a [BitSet],
    best: Vec<usize>,
    nodes: usize,
    node_limit: usize,
}

impl CliqueSearch<'_> {
    fn color_order(&self, candidates: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(candidates.count());
        let mut bounds = Vec::with_capacity(order.capacity());
        let mut uncolored = candidates.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut class = uncolored.clone();
            while let Some(v) = class.first() {
                class.remove(v);
                class.difference_with(&self.compatible[v]);
                uncolored.remove(v);
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut candidates: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Capacity {
                what: "independent set search nodes",
                limit: self.node_limit,
                actual: self.nodes,
            });
        }
        let (order, bounds) = self.color_order(&candidates);
        for idx in (0..order.len()).rev() {
            if clique.len() + bounds[idx] <= self.best.len() {
                return Ok(());
            }
            let v = order[idx];
            clique.push(v);
            let mut next = candidates.clone();
            next.intersect_with(&self.compatible[v]);
            if next.is_empty() {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next)?;
            }
            clique.pop();
            candidates.remove(v);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conflicts_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<BitSet> {
        let mut c = vec![BitSet::new(n); n];
        for &(u, v) in edges {
            c[u].insert(v);
            c[v].insert(u);
        }
        c
    }

    fn brute_force(n: usize, edges: &[(usize, usize)]) -> usize {
        (0u32..1 << n)
            .filter(|&mask| edges.iter().all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0))
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn cycle_and_empty() {
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let got = max_independent_set(&conflicts_from_edges(5, &c5), 1000).unwrap();
        assert_eq!(got.members.len(), 2);
        assert!(max_independent_set(&[], 10).unwrap().members.is_empty());
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for _ in 0..200 {
            let n = 1 + (next() % 13) as usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if next() % 3 == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let got = max_independent_set(&conflicts_from_edges(n, &edges), 1_000_000).unwrap();
            for &(u, v) in &edges {
                assert!(!(got.members.contains(&u) && got.members.contains(&v)));
            }
            assert_eq!(got.members.len(), brute_force(n, &edges));
        }
    }

    #[test]
    fn node_limit_is_a_capacity_error() {
        let n = 30;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        assert!(max_independent_set(&conflicts_from_edges(n, &edges), 2)
            .unwrap_err()
            .is_capacity());
    }
}
