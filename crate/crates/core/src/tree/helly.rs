//! Disjoint subtrees of a tree: the Helly dichotomy and selection across
//! several families.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::decomposition::check_tree;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// A tree rooted at node 0.
pub(crate) struct RootedTree {
    pub depth: Vec<usize>,
    pub parent: Vec<Option<Vertex>>,
    /// Nodes by decreasing depth, ties to the lowest id.
    pub bottom_up: Vec<Vertex>,
}

impl RootedTree {
    pub fn new(tree: &Graph) -> Result<Self> {
        check_tree(tree)?;
        let n = tree.vertex_count();
        let mut depth = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        depth[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for w in tree.neighbors(v) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        let mut bottom_up: Vec<Vertex> = (0..n).collect();
        bottom_up.sort_by_key(|&v| (std::cmp::Reverse(depth[v]), v));
        Ok(RootedTree {
            depth,
            parent,
            bottom_up,
        })
    }

    /// The highest node of a connected subtree.
    pub fn top(&self, subtree: &VertexSet) -> Vertex {
        subtree
            .iter()
            .min_by_key(|&v| (self.depth[v], v))
            .expect("subtrees are nonempty")
    }

    /// Nodes below `v`, including `v`.
    pub fn descendants(&self, v: Vertex) -> VertexSet {
        (0..self.depth.len())
            .filter(|&u| {
                let mut x = Some(u);
                while let Some(y) = x {
                    if y == v {
                        return true;
                    }
                    if self.depth[y] <= self.depth[v] {
                        return false;
                    }
                    x = self.parent[y];
                }
                false
            })
            .collect()
    }
}

fn check_subtrees(tree: &Graph, subtrees: &[VertexSet]) -> Result<()> {
    for (i, s) in subtrees.iter().enumerate() {
        tree.check_set(s)?;
        if s.is_empty() {
            return Err(Error::invalid(format!("subtree {i} is empty")));
        }
        if !tree.induces_connected(s) {
            return Err(Error::invalid(format!("subtree {i} is disconnected")));
        }
    }
    Ok(())
}

/// Result of the deepest-top greedy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtreeGreedy {
    /// Indices of pairwise disjoint subtrees, in the order taken.
    pub disjoint: Vec<usize>,
    /// Their highest nodes. They meet every subtree, so the packing is
    /// maximum.
    pub tops: VertexSet,
}

/// Repeatedly takes the remaining subtree whose highest node is deepest and
/// discards every subtree through that node.
pub fn max_disjoint_subtrees(tree: &Graph, subtrees: &[VertexSet]) -> Result<SubtreeGreedy> {
    check_subtrees(tree, subtrees)?;
    let rooted = RootedTree::new(tree)?;
    Ok(greedy(&rooted, subtrees))
}

pub(crate) fn greedy(rooted: &RootedTree, subtrees: &[VertexSet]) -> SubtreeGreedy {
    let tops: Vec<Vertex> = subtrees.iter().map(|s| rooted.top(s)).collect();
    let mut order: Vec<usize> = (0..subtrees.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(rooted.depth[tops[i]]), tops[i], i));
    let mut alive = vec![true; subtrees.len()];
    let mut out = SubtreeGreedy {
        disjoint: Vec::new(),
        tops: VertexSet::new(),
    };
    for i in order {
        if !alive[i] {
            continue;
        }
        let t = tops[i];
        out.disjoint.push(i);
        out.tops.insert(t);
        for (j, s) in subtrees.iter().enumerate() {
            if s.contains(t) {
                alive[j] = false;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", content = "witness", rename_all = "snake_case")]
pub enum HellyOutcome {
    /// Indices of `k` pairwise disjoint subtrees.
    Disjoint(Vec<usize>),
    /// At most `k − 1` nodes meeting every subtree.
    Hitting(VertexSet),
}

/// Either `k` pairwise disjoint subtrees or at most `k − 1` nodes meeting
/// all of them.
pub fn tree_helly(tree: &Graph, subtrees: &[VertexSet], k: usize) -> Result<HellyOutcome> {
    let found = max_disjoint_subtrees(tree, subtrees)?;
    if found.disjoint.len() >= k {
        let mut chosen = found.disjoint;
        chosen.truncate(k);
        chosen.sort_unstable();
        Ok(HellyOutcome::Disjoint(chosen))
    } else {
        Ok(HellyOutcome::Hitting(found.tops))
    }
}

/// Picks `quotas[i]` members of `families[i]` for every `i`, all pairwise
/// disjoint. Each family must contain `k ≥ Σ quotas` pairwise disjoint
/// members; such a selection then exists, and failing to find one is
/// reported against the family where the search got stuck.
pub fn multi_family_select(
    tree: &Graph,
    families: &[Vec<VertexSet>],
    quotas: &[usize],
    k: usize,
    caps: &Caps,
) -> Result<Vec<Vec<usize>>> {
    if families.len() != quotas.len() {
        return Err(Error::invalid(format!(
            "{} families but {} quotas",
            families.len(),
            quotas.len()
        )));
    }
    let total: usize = quotas.iter().sum();
    if total > k {
        return Err(Error::invalid(format!("quotas sum to {total}, above k = {k}")));
    }
    let rooted = RootedTree::new(tree)?;
    for (i, fam) in families.iter().enumerate() {
        check_subtrees(tree, fam)?;
        let have = greedy(&rooted, fam).disjoint.len();
        if have < k {
            return Err(Error::precondition(format!(
                "family {i} has only {have} pairwise disjoint members, fewer than k = {k}"
            )));
        }
    }
    let mut search = Selection {
        rooted: &rooted,
        families,
        quotas,
        used: VertexSet::new(),
        picks: vec![Vec::new(); families.len()],
        nodes: 0,
        node_limit: caps.search_nodes,
        stuck_at: 0,
    };
    if search.run(0, 0)? {
        Ok(search.picks)
    } else {
        Err(Error::precondition(format!(
            "no disjoint selection completes family {}",
            search.stuck_at
        )))
    }
}

struct Selection<'a> {
    rooted: &'a RootedTree,
    families: &'a [Vec<VertexSet>],
    quotas: &'a [usize],
    used: VertexSet,
    picks: Vec<Vec<usize>>,
    nodes: usize,
    node_limit: usize,
    stuck_at: usize,
}

impl Selection<'_> {
    /// Whether every family from `from` on can still meet its quota among
    /// members avoiding the used nodes.
    fn feasible(&mut self, from: usize) -> bool {
        for i in from..self.families.len() {
            let need = self.quotas[i] - if i == from { self.picks[i].len() } else { 0 };
            let free: Vec<VertexSet> = self.families[i]
                .iter()
                .filter(|s| s.is_disjoint(&self.used))
                .cloned()
                .collect();
            if greedy(self.rooted, &free).disjoint.len() < need {
                self.stuck_at = self.stuck_at.max(i);
                return false;
            }
        }
        true
    }

    fn run(&mut self, family: usize, start: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Capacity {
                what: "multi-family selection nodes",
                limit: self.node_limit,
                actual: self.nodes,
            });
        }
        if family == self.families.len() {
            return Ok(true);
        }
        if self.picks[family].len() == self.quotas[family] {
            return self.run(family + 1, 0);
        }
        if !self.feasible(family) {
            return Ok(false);
        }
        for j in start..self.families[family].len() {
            let s = &self.families[family][j];
            if !s.is_disjoint(&self.used) {
                continue;
            }
            let added: Vec<Vertex> = s.iter().collect();
            self.used.extend(added.iter().copied());
            self.picks[family].push(j);
            if self.run(family, j + 1)? {
                return Ok(true);
            }
            self.picks[family].pop();
            for v in added {
                self.used.remove(v);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn path_singletons_pack() {
        let t = path(5);
        let subs = vec![VertexSet::from([0]), VertexSet::from([2]), VertexSet::from([4])];
        assert_eq!(tree_helly(&t, &subs, 3).unwrap(), HellyOutcome::Disjoint(vec![0, 1, 2]));
    }

    #[test]
    fn star_through_center_is_hit_once() {
        let star = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let subs = vec![VertexSet::from([0, 1]), VertexSet::from([0, 2, 3]), VertexSet::from([0])];
        assert_eq!(tree_helly(&star, &subs, 2).unwrap(), HellyOutcome::Hitting(VertexSet::from([0])));
    }

    #[test]
    fn disconnected_member_is_rejected() {
        let t = path(4);
        let subs = vec![VertexSet::from([0, 2])];
        assert!(matches!(tree_helly(&t, &subs, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn two_families_on_a_path() {
        let t = path(6);
        let odd = vec![VertexSet::from([0]), VertexSet::from([2]), VertexSet::from([4])];
        let even = vec![VertexSet::from([1]), VertexSet::from([3]), VertexSet::from([5])];
        let caps = Caps::default();
        let picks = multi_family_select(&t, &[odd.clone(), even.clone()], &[2, 1], 3, &caps).unwrap();
        assert_eq!(picks, vec![vec![0, 1], vec![0]]);
        assert!(matches!(
            multi_family_select(&t, &[odd.clone(), even.clone()], &[2, 2], 3, &caps),
            Err(Error::InvalidInput(_))
        ));
        let thin = vec![VertexSet::from([0, 1, 2, 3, 4, 5])];
        assert!(matches!(
            multi_family_select(&t, &[odd, thin], &[2, 1], 3, &caps),
            Err(Error::Precondition(m)) if m.contains("family 1")
        ));
    }

    #[test]
    fn descendants_of_inner_node() {
        let t = Graph::new(5, [(0, 1), (1, 2), (1, 3), (0, 4)]).unwrap();
        let r = RootedTree::new(&t).unwrap();
        assert_eq!(r.descendants(1), VertexSet::from([1, 2, 3]));
        assert_eq!(r.bottom_up[..3], [2, 3, 1]);
    }
}
