//! Exact and greedy set cover over explicit element/candidate incidences.

use crate::bits::BitSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    /// Chosen candidate indices, sorted.
    pub chosen: Vec<usize>,
    pub nodes_explored: usize,
}

/// `covers[c]` is the set of elements candidate `c` covers. Every element
/// must be covered by some candidate.
pub fn exact_set_cover(elements: usize, covers: &[BitSet], node_limit: usize) -> Result<Cover> {
    let by_element: Vec<Vec<usize>> = (0..elements)
        .map(|e| (0..covers.len()).filter(|&c| covers[c].contains(e)).collect())
        .collect();
    if let Some(e) = by_element.iter().position(Vec::is_empty) {
        return Err(Error::invalid(format!("element {e} cannot be covered")));
    }
    let upper = greedy_set_cover(elements, covers);
    let mut search = Search {
        covers,
        by_element: &by_element,
        best: upper.chosen,
        excluded: vec![false; covers.len()],
        chosen: Vec::new(),
        nodes: 0,
        node_limit,
    };
    search.run(&BitSet::full(elements))?;
    let mut chosen = search.best;
    chosen.sort_unstable();
    Ok(Cover {
        chosen,
        nodes_explored: search.nodes,
    })
}

struct Search<'a> {
    covers: &'a [BitSet],
    by_element: &'a [Vec<usize>],
    best: Vec<usize>,
    excluded: Vec<bool>,
    chosen: Vec<usize>,
    nodes: usize,
    node_limit: usize,
}

impl Search<'_> {
    // Greedily picks uncovered elements whose available candidates are
    // pairwise disjoint; each needs its own candidate.
    fn lower_bound(&self, uncovered: &BitSet) -> usize {
        let mut used = vec![false; self.covers.len()];
        let mut bound = 0;
        for e in uncovered.iter() {
            let options = self.by_element[e].iter().filter(|&&c| !self.excluded[c]);
            if options.clone().all(|&c| !used[c]) {
                for &c in options {
                    used[c] = true;
                }
                bound += 1;
            }
        }
        bound
    }

    fn run(&mut self, uncovered: &BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Capacity {
                what: "set cover search nodes",
                limit: self.node_limit,
                actual: self.nodes,
            });
        }
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        }
        if self.chosen.len() + self.lower_bound(uncovered) >= self.best.len() {
            return Ok(());
        }
        // the uncovered element with the fewest remaining candidates
        let mut pick: Option<(usize, usize)> = None;
        for e in uncovered.iter() {
            let options = self.by_element[e].iter().filter(|&&c| !self.excluded[c]).count();
            if pick.map_or(true, |(best, _)| options < best) {
                pick = Some((options, e));
            }
        }
        let (_, e) = pick.expect("uncovered is nonempty");
        let options: Vec<usize> = self.by_element[e]
            .iter()
            .copied()
            .filter(|&c| !self.excluded[c])
            .collect();
        let mut newly_excluded = Vec::new();
        for c in options {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.covers[c]);
            self.chosen.push(c);
            let res = self.run(&rest);
            self.chosen.pop();
            if res.is_err() {
                for &x in &newly_excluded {
                    self.excluded[x] = false;
                }
                return res;
            }
            self.excluded[c] = true;
            newly_excluded.push(c);
        }
        for x in newly_excluded {
            self.excluded[x] = false;
        }
        Ok(())
    }
}

/// Max-coverage greedy, ties to the lowest candidate index.
pub fn greedy_set_cover(elements: usize, covers: &[BitSet]) -> Cover {
    let mut uncovered = BitSet::full(elements);
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let mut best = (0, usize::MAX);
        for (c, set) in covers.iter().enumerate() {
            let mut gain = set.clone();
            gain.intersect_with(&uncovered);
            let gain = gain.count();
            if gain > best.0 {
                best = (gain, c);
            }
        }
        if best.0 == 0 {
            break;
        }
        uncovered.difference_with(&covers[best.1]);
        chosen.push(best.1);
    }
    chosen.sort_unstable();
    Cover {
        chosen,
        nodes_explored: 0,
    }
}
