//! Inclusion-minimal members of a path family.
//!
//! A member is minimal when it is an induced path and no pair of its
//! vertices other than its two ends is itself an eligible end pair. Every
//! member contains a minimal one on a subset of its vertices (shortcut
//! along a chord or cut down to an inner eligible pair, repeat). So a set
//! meets every member iff it meets every minimal member, and a far-apart
//! collection of members can always be replaced by minimal ones.

use super::PathFamily;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Minimal members in lexicographic order, one orientation each. Fails with
/// a capacity error once more than `limit` are found.
pub fn minimal_paths(g: &Graph, family: &PathFamily, limit: usize) -> Result<Vec<Vec<Vertex>>> {
    family.validate(g)?;
    let mut search = Search {
        g,
        eligible: family.eligibility_matrix(g),
        on_path: vec![false; g.vertex_count()],
        blocked: vec![0; g.vertex_count()],
        path: Vec::new(),
        out: Vec::new(),
        limit,
    };
    for s in family.end_candidates().iter() {
        if search.eligible[s][s] {
            search.record(vec![s])?;
            continue;
        }
        search.path.push(s);
        search.on_path[s] = true;
        search.extend()?;
        search.on_path[s] = false;
        search.path.pop();
    }
    Ok(search.out)
}

struct Search<'a> {
    g: &'a Graph,
    eligible: Vec<Vec<bool>>,
    on_path: Vec<bool>,
    // count of path vertices, other than the last, that are equal or adjacent
    blocked: Vec<u32>,
    path: Vec<Vertex>,
    out: Vec<Vec<Vertex>>,
    limit: usize,
}

impl Search<'_> {
    fn record(&mut self, p: Vec<Vertex>) -> Result<()> {
        if self.out.len() >= self.limit {
            return Err(Error::Capacity {
                what: "minimal candidate paths",
                limit: self.limit,
                actual: self.limit + 1,
            });
        }
        self.out.push(p);
        Ok(())
    }

    fn shift_block(&mut self, v: Vertex, delta: i32) {
        let g = self.g;
        self.blocked[v] = self.blocked[v].wrapping_add_signed(delta);
        for w in g.neighbors(v) {
            self.blocked[w] = self.blocked[w].wrapping_add_signed(delta);
        }
    }

    fn extend(&mut self) -> Result<()> {
        let g = self.g;
        let s = self.path[0];
        let last = *self.path.last().unwrap();
        'next: for w in g.neighbors(last) {
            if self.on_path[w] || self.blocked[w] > 0 || self.eligible[w][w] {
                continue;
            }
            for &p in &self.path[1..] {
                if self.eligible[p][w] {
                    continue 'next;
                }
            }
            if self.eligible[s][w] {
                if s < w {
                    let mut p = self.path.clone();
                    p.push(w);
                    self.record(p)?;
                }
                continue;
            }
            self.shift_block(last, 1);
            self.path.push(w);
            self.on_path[w] = true;
            let res = self.extend();
            self.on_path[w] = false;
            self.path.pop();
            self.shift_block(last, -1);
            res?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graph::VertexSet;
    use crate::paths::enumerate_family;

    fn is_minimal(g: &Graph, fam: &PathFamily, p: &[Vertex]) -> bool {
        for i in 0..p.len() {
            for j in i..p.len() {
                if (i, j) != (0, p.len() - 1) && fam.eligible(g, p[i], p[j]) {
                    return false;
                }
                if j > i + 1 && g.has_edge(p[i], p[j]) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn matches_filtered_full_enumeration() {
        let g = Graph::new(
            7,
            [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 3), (1, 5), (2, 6), (6, 3)],
        )
        .unwrap();
        let families = [
            PathFamily::lxy(0.0, VertexSet::from([0, 1]), VertexSet::from([3, 1])),
            PathFamily::lxy(2.0, VertexSet::from([0, 4]), VertexSet::from([3, 6])),
            PathFamily::a_paths(VertexSet::from([0, 2, 3, 5])),
        ];
        for fam in families {
            let all = enumerate_family(&g, &fam, None, &Caps::default()).unwrap();
            let expected: Vec<Vec<Vertex>> = all
                .paths
                .into_iter()
                .map(|p| p.sequence)
                .filter(|p| is_minimal(&g, &fam, p))
                .collect();
            assert_eq!(minimal_paths(&g, &fam, 1000).unwrap(), expected);
        }
    }

    #[test]
    fn limit_is_a_capacity_error() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let fam = PathFamily::lxy(0.0, VertexSet::from([0]), VertexSet::from([2]));
        assert_eq!(minimal_paths(&g, &fam, 2).unwrap().len(), 2);
        assert!(minimal_paths(&g, &fam, 1).unwrap_err().is_capacity());
    }
}
