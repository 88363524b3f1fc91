//! Tree-decompositions: validation, a min-degree heuristic, JSON form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// A tree with one bag per tree node.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<VertexSet>,
}

/// Serialized form: tree edges as node index pairs, bags as sorted arrays of
/// vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub tree_edges: Vec<(usize, usize)>,
    pub bags: Vec<Vec<Vertex>>,
}

impl TreeDecomposition {
    pub fn new(tree: Graph, bags: Vec<VertexSet>) -> Result<Self> {
        if bags.len() != tree.vertex_count() {
            return Err(Error::invalid(format!(
                "{} bags for {} tree nodes",
                bags.len(),
                tree.vertex_count()
            )));
        }
        check_tree(&tree)?;
        Ok(TreeDecomposition { tree, bags })
    }

    /// Largest bag size minus one; -1 is reported as 0.
    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Checks that this decomposes `G[within]`: bags inside `within` and
    /// covering it, every induced edge inside a bag, connected vertex traces.
    pub fn validate(&self, g: &Graph, within: &VertexSet) -> Result<()> {
        check_tree(&self.tree)?;
        if self.bags.len() != self.tree.vertex_count() {
            return Err(Error::invalid("bag count differs from tree order"));
        }
        g.check_set(within)?;
        let mut covered = VertexSet::new();
        for (t, bag) in self.bags.iter().enumerate() {
            if !bag.is_subset(within) {
                return Err(Error::invalid(format!("bag {t} leaves the decomposed vertex set")));
            }
            covered.extend(bag.iter());
        }
        if covered != *within {
            let missing = within.difference(&covered).first().expect("nonempty");
            return Err(Error::invalid(format!("vertex {missing} is in no bag")));
        }
        for &(u, v) in g.edges() {
            if within.contains(u)
                && within.contains(v)
                && !self.bags.iter().any(|b| b.contains(u) && b.contains(v))
            {
                return Err(Error::invalid(format!("edge ({u}, {v}) is in no bag")));
            }
        }
        for v in within.iter() {
            let trace: VertexSet = (0..self.bags.len()).filter(|&t| self.bags[t].contains(v)).collect();
            if !self.tree.induces_connected(&trace) {
                return Err(Error::invalid(format!("the bags containing vertex {v} are not connected")));
            }
        }
        Ok(())
    }

    pub fn to_document(&self) -> DecompositionDocument {
        DecompositionDocument {
            tree_edges: self.tree.edges().to_vec(),
            bags: self.bags.iter().map(VertexSet::to_vec).collect(),
        }
    }

    pub fn from_document(doc: &DecompositionDocument) -> Result<Self> {
        let tree = Graph::new(doc.bags.len(), doc.tree_edges.iter().copied())?;
        TreeDecomposition::new(tree, doc.bags.iter().map(|b| b.iter().copied().collect()).collect())
    }

    /// Min-degree elimination on `G[within]`, ties to the lowest vertex.
    /// One node per eliminated vertex; the width is whatever comes out.
    pub fn min_degree(g: &Graph, within: &VertexSet) -> Result<Self> {
        g.check_set(within)?;
        let n = g.vertex_count();
        if within.is_empty() {
            return TreeDecomposition::new(Graph::new(1, [])?, vec![VertexSet::new()]);
        }
        let mut adj: Vec<VertexSet> = vec![VertexSet::new(); n];
        for v in within.iter() {
            adj[v] = g.neighbors(v).filter(|&w| within.contains(w)).collect();
        }
        let mut alive = within.clone();
        let mut order = Vec::with_capacity(within.len());
        let mut bags = Vec::with_capacity(within.len());
        loop {
            let Some(v) = alive.iter().min_by_key(|&v| (adj[v].len(), v)) else {
                break;
            };
            let nbrs = adj[v].clone();
            for a in nbrs.iter() {
                adj[a].remove(v);
                for b in nbrs.iter() {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
            let mut bag = nbrs;
            bag.insert(v);
            alive.remove(v);
            order.push(v);
            bags.push(bag);
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut edges = Vec::new();
        let mut roots = Vec::new();
        for (i, bag) in bags.iter().enumerate() {
            // attach to the neighbour eliminated next
            match bag.iter().filter(|&w| position[w] > i).map(|w| position[w]).min() {
                Some(p) => edges.push((i, p)),
                None => roots.push(i),
            }
        }
        for w in roots.windows(2) {
            edges.push((w[0], w[1]));
        }
        TreeDecomposition::new(Graph::new(bags.len(), edges)?, bags)
    }
}

pub(crate) fn check_tree(tree: &Graph) -> Result<()> {
    if tree.vertex_count() == 0 {
        return Err(Error::invalid("a tree needs at least one node"));
    }
    if tree.edge_count() + 1 != tree.vertex_count() || !tree.is_connected() {
        return Err(Error::invalid("the decomposition tree is not a tree"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_gets_width_two() {
        let c6 = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let all = c6.all_vertices();
        let td = TreeDecomposition::min_degree(&c6, &all).unwrap();
        td.validate(&c6, &all).unwrap();
        assert_eq!(td.width(), 2);
        let back = TreeDecomposition::from_document(&td.to_document()).unwrap();
        assert_eq!(back, td);
    }

    #[test]
    fn broken_decompositions_are_rejected() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let all = p3.all_vertices();
        let tree = Graph::new(2, [(0, 1)]).unwrap();
        let missing_edge = TreeDecomposition::new(tree.clone(), vec![VertexSet::from([0, 1]), VertexSet::from([2])]).unwrap();
        assert!(missing_edge.validate(&p3, &all).is_err());
        let path3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let split_trace = TreeDecomposition::new(
            path3,
            vec![VertexSet::from([0, 1]), VertexSet::from([1, 2]), VertexSet::from([0])],
        )
        .unwrap();
        assert!(split_trace.validate(&p3, &all).is_err());
        assert!(TreeDecomposition::new(Graph::new(2, []).unwrap(), vec![VertexSet::new(); 2]).is_err());
    }

    #[test]
    fn disconnected_input_still_gives_a_tree() {
        let g = Graph::new(5, [(0, 1), (3, 4)]).unwrap();
        let all = g.all_vertices();
        let td = TreeDecomposition::min_degree(&g, &all).unwrap();
        td.validate(&g, &all).unwrap();
        assert_eq!(td.width(), 1);
    }
}
