//! Separations of (induced subgraphs of) a graph, and locations.
//!
//! A separation is stored by its two vertex sets. Edges inside the
//! separator belong to side A and every other edge to the side holding both
//! of its ends, so side A is the induced subgraph on its vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Separation {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
}

impl Separation {
    pub fn new(side_a: VertexSet, side_b: VertexSet) -> Self {
        Separation { side_a, side_b }
    }

    /// `V(A ∩ B)`.
    pub fn separator(&self) -> VertexSet {
        self.side_a.intersection(&self.side_b)
    }

    pub fn order(&self) -> usize {
        self.side_a.intersection(&self.side_b).len()
    }

    pub fn flipped(&self) -> Separation {
        Separation::new(self.side_b.clone(), self.side_a.clone())
    }

    /// Whether this is a separation of `G[within]`: the sides cover
    /// `within` and no edge joins the two private parts.
    pub fn is_valid_in(&self, g: &Graph, within: &VertexSet) -> bool {
        if !self.side_a.is_subset(within) || !self.side_b.is_subset(within) {
            return false;
        }
        if self.side_a.union(&self.side_b) != *within {
            return false;
        }
        let only_a = self.side_a.difference(&self.side_b);
        let only_b = self.side_b.difference(&self.side_a);
        let crossing = only_a.iter().any(|v| g.neighbors(v).any(|w| only_b.contains(w)));
        !crossing
    }

    pub fn validate(&self, g: &Graph, within: &VertexSet) -> Result<()> {
        if self.is_valid_in(g, within) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "({:?}, {:?}) is not a separation",
                self.side_a.to_vec(),
                self.side_b.to_vec()
            )))
        }
    }
}

/// A set of separations whose small sides sit inside each other's big
/// sides, compared on vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Location {
    pub separations: Vec<Separation>,
}

impl Location {
    pub fn new(separations: Vec<Separation>) -> Self {
        Location { separations }
    }

    /// The location `{(∅, G[within])}`.
    pub fn trivial(within: &VertexSet) -> Self {
        Location::new(vec![Separation::new(VertexSet::new(), within.clone())])
    }

    /// `⋂ V(B)` over all separations; `within` itself for an empty location.
    pub fn core(&self, within: &VertexSet) -> VertexSet {
        self.separations
            .iter()
            .fold(within.clone(), |acc, s| acc.intersection(&s.side_b))
    }

    pub fn validate(&self, g: &Graph, within: &VertexSet) -> Result<()> {
        for s in &self.separations {
            s.validate(g, within)?;
        }
        for (i, s) in self.separations.iter().enumerate() {
            for (j, t) in self.separations.iter().enumerate() {
                if i != j && !s.side_a.is_subset(&t.side_b) {
                    return Err(Error::invalid(format!(
                        "separations {i} and {j} are not nested: A{i} is not inside B{j}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_separations() {
        let g = Graph::new(5, (1..5).map(|i| (i - 1, i))).unwrap();
        let all = g.all_vertices();
        let s = Separation::new(VertexSet::from([0, 1, 2]), VertexSet::from([2, 3, 4]));
        assert!(s.is_valid_in(&g, &all));
        assert_eq!(s.order(), 1);
        let bad = Separation::new(VertexSet::from([0, 1]), VertexSet::from([2, 3, 4]));
        assert!(!bad.is_valid_in(&g, &all));
        let left = Separation::new(VertexSet::from([0, 1]), VertexSet::from([1, 2, 3, 4]));
        let right = Separation::new(VertexSet::from([3, 4]), VertexSet::from([0, 1, 2, 3]));
        let loc = Location::new(vec![left, right]);
        assert!(loc.validate(&g, &all).is_ok());
        assert_eq!(loc.core(&all), VertexSet::from([1, 2, 3]));
        // a separation and its flip are nested on vertex sets
        assert!(Location::new(vec![s.clone(), s.flipped()]).validate(&g, &all).is_ok());
        let wide = Separation::new(VertexSet::from([0, 1]), VertexSet::from([1, 2, 3, 4]));
        assert!(Location::new(vec![s, wide]).validate(&g, &all).is_err());
    }
}
