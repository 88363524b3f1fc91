//! Centered hitting sets from a tree-decomposition of a location.
//!
//! Each member component is thickened by `r` and traced onto the
//! decomposition tree, extended by one leaf per separation carrying its small
//! side. Few tree nodes hitting every trace give few bags whose `r`-ball
//! meets every member; otherwise disjoint traces give members pairwise
//! farther than `2r` apart.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::decomposition::TreeDecomposition;
use super::helly::{greedy, multi_family_select, RootedTree};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{certify_centered, greater_than, CenteredSet, Certification, Graph, SearchMode, VertexSet};
use crate::separation::Location;

/// Subgraphs with exactly `component_count` labelled components each, given
/// by vertex sets. Labels are the positions in each member's list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeableFamily {
    pub component_count: usize,
    pub members: Vec<Vec<VertexSet>>,
}

impl ExchangeableFamily {
    pub fn new(component_count: usize, members: Vec<Vec<VertexSet>>) -> Result<Self> {
        if component_count == 0 {
            return Err(Error::invalid("members need at least one component"));
        }
        for (i, m) in members.iter().enumerate() {
            if m.len() != component_count {
                return Err(Error::invalid(format!(
                    "member {i} has {} components, expected {component_count}",
                    m.len()
                )));
            }
            for (a, ca) in m.iter().enumerate() {
                if ca.is_empty() {
                    return Err(Error::invalid(format!("component {a} of member {i} is empty")));
                }
                if m[a + 1..].iter().any(|cb| cb.intersects(ca)) {
                    return Err(Error::invalid(format!("member {i} has overlapping components")));
                }
            }
        }
        Ok(ExchangeableFamily {
            component_count,
            members,
        })
    }

    /// Connected members, one component each.
    pub fn connected(members: Vec<VertexSet>) -> Result<Self> {
        ExchangeableFamily::new(1, members.into_iter().map(|m| vec![m]).collect())
    }

    pub fn member_vertices(&self, i: usize) -> VertexSet {
        self.members[i].iter().fold(VertexSet::new(), |acc, c| acc.union(c))
    }

    /// Every component must induce a connected subgraph of `g`.
    pub fn validate_in(&self, g: &Graph) -> Result<()> {
        for (i, m) in self.members.iter().enumerate() {
            for (j, c) in m.iter().enumerate() {
                g.check_set(c)?;
                if !g.induces_connected(c) {
                    return Err(Error::invalid(format!("component {j} of member {i} is disconnected")));
                }
            }
        }
        Ok(())
    }

    /// Samples `samples` tuples of members and checks that whenever the
    /// chosen labelled components are pairwise disjoint, their combination
    /// is again a member. Returns the first failing tuple.
    pub fn sample_exchange(&self, samples: usize, seed: u64) -> Option<Vec<usize>> {
        if self.members.is_empty() {
            return None;
        }
        let known: HashSet<&Vec<VertexSet>> = self.members.iter().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let indices: Vec<usize> = (0..self.members.len()).collect();
        for _ in 0..samples {
            let pick: Vec<usize> = (0..self.component_count)
                .map(|_| *indices.choose(&mut rng).expect("nonempty"))
                .collect();
            let combo: Vec<VertexSet> = pick.iter().enumerate().map(|(a, &i)| self.members[i][a].clone()).collect();
            let disjoint = (0..combo.len()).all(|a| combo[a + 1..].iter().all(|b| b.is_disjoint(&combo[a])));
            if disjoint && !known.contains(&combo) {
                return Some(pick);
            }
        }
        None
    }
}

/// Parameters of the lemma: packing threshold `2r`, `k` members, bags
/// `(ξ, η)`-centered.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EasyTreeParams {
    pub r: f64,
    pub k: usize,
    pub xi: usize,
    pub eta: f64,
}

/// A packed member assembled from labelled components, component `a` taken
/// from member `sources[a]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackedMember {
    pub sources: Vec<usize>,
    pub components: Vec<VertexSet>,
}

impl PackedMember {
    pub fn vertices(&self) -> VertexSet {
        self.components.iter().fold(VertexSet::new(), |acc, c| acc.union(c))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum EasyTreeOutcome {
    /// `k` members pairwise at distance greater than `2r`.
    Packing { members: Vec<PackedMember> },
    /// At most `(ck − 1)ξ` centers at radius `η + r`, meeting every member.
    Hitting {
        set: CenteredSet,
        /// Nodes of the decomposition tree whose bags were used.
        nodes: VertexSet,
        /// The component label whose traces could not be packed.
        component: usize,
    },
}

/// Answers "is there a member inside `allowed`?" for families too large to
/// list. Used with connected members only.
pub trait MemberOracle {
    /// Some member with all vertices in `allowed`, as its components.
    fn member_within(&self, allowed: &VertexSet) -> Result<Option<Vec<VertexSet>>>;
}

impl MemberOracle for ExchangeableFamily {
    fn member_within(&self, allowed: &VertexSet) -> Result<Option<Vec<VertexSet>>> {
        Ok(self
            .members
            .iter()
            .find(|m| m.iter().all(|c| c.is_subset(allowed)))
            .cloned())
    }
}

/// The tree-decomposition extended by one leaf per separation, plus the
/// certified centers of every original bag.
struct Extended {
    tree: Graph,
    bags: Vec<VertexSet>,
    rooted: RootedTree,
    /// Original node for each added leaf, in separation order.
    attach: Vec<usize>,
    original: usize,
    centers: Vec<VertexSet>,
}

impl Extended {
    fn build(
        g: &Graph,
        l: &VertexSet,
        loc: &Location,
        td: &TreeDecomposition,
        params: &EasyTreeParams,
        caps: &Caps,
    ) -> Result<Self> {
        if !(params.r.is_finite() && params.r >= 0.0 && params.eta.is_finite() && params.eta >= 0.0) {
            return Err(Error::invalid("r and η must be finite and nonnegative"));
        }
        g.check_set(l)?;
        loc.validate(g, l)?;
        let core = loc.core(l);
        td.validate(g, &core)
            .map_err(|e| Error::precondition(format!("not a tree-decomposition of the location: {e}")))?;
        let original = td.tree.vertex_count();
        let mut attach = Vec::with_capacity(loc.separations.len());
        for (i, s) in loc.separations.iter().enumerate() {
            let sep = s.separator();
            let t = td.bags.iter().position(|b| sep.is_subset(b)).ok_or_else(|| {
                Error::precondition(format!("separation {i}: its separator {:?} lies in no bag", sep.to_vec()))
            })?;
            attach.push(t);
        }
        let mode = if g.vertex_count() <= caps.centered_vertices {
            SearchMode::Exact
        } else {
            SearchMode::Heuristic
        };
        let mut centers = Vec::with_capacity(original);
        for (t, bag) in td.bags.iter().enumerate() {
            match certify_centered(g, bag, params.xi, params.eta, mode, caps)? {
                Certification::Centered(c) => centers.push(c.centers),
                Certification::Refused(why) => {
                    return Err(Error::precondition(format!(
                        "bag {t} is not certified ({}, {})-centered: {}",
                        params.xi, params.eta, why.obligation
                    )))
                }
            }
        }
        let mut edges = td.tree.edges().to_vec();
        let mut bags = td.bags.clone();
        for (i, s) in loc.separations.iter().enumerate() {
            edges.push((attach[i], original + i));
            bags.push(s.side_a.clone());
        }
        let tree = Graph::new(bags.len(), edges)?;
        let rooted = RootedTree::new(&tree)?;
        Ok(Extended {
            tree,
            bags,
            rooted,
            attach,
            original,
            centers,
        })
    }

    /// Nodes whose bag meets `thick`.
    fn trace(&self, thick: &VertexSet) -> VertexSet {
        (0..self.bags.len()).filter(|&t| self.bags[t].intersects(thick)).collect()
    }

    /// Maps added leaves to their attachment nodes and takes the
    /// `r`-neighbourhood of the union of the bags there.
    fn hitting_set(&self, g: &Graph, nodes: &VertexSet, params: &EasyTreeParams) -> (CenteredSet, VertexSet) {
        let moved: VertexSet = nodes
            .iter()
            .map(|t| if t < self.original { t } else { self.attach[t - self.original] })
            .collect();
        let mut union = VertexSet::new();
        let mut centers = VertexSet::new();
        for t in moved.iter() {
            union.extend(self.bags[t].iter());
            centers.extend(self.centers[t].iter());
        }
        let set = CenteredSet {
            members: g.ball(&union, params.r),
            centers,
            radius: params.eta + params.r,
        };
        (set, moved)
    }
}

fn far_apart(g: &Graph, members: &[PackedMember], r: f64) -> bool {
    let sets: Vec<VertexSet> = members.iter().map(PackedMember::vertices).collect();
    (0..sets.len()).all(|i| (i + 1..sets.len()).all(|j| greater_than(g.set_distance_unchecked(&sets[i], &sets[j]), 2.0 * r)))
}

fn hitting_budget(c: usize, params: &EasyTreeParams) -> usize {
    (c * params.k).saturating_sub(1) * params.xi
}

/// Either `k` members pairwise farther than `2r` apart or a
/// `((ck − 1)ξ, η + r)`-centered set meeting every member, following the
/// construction through the extended decomposition tree.
///
/// Every hypothesis is checked first; a violated one is a precondition
/// error naming the offending bag, separation, or member.
pub fn easy_tree_hitting(
    g: &Graph,
    l: &VertexSet,
    fam: &ExchangeableFamily,
    loc: &Location,
    td: &TreeDecomposition,
    params: &EasyTreeParams,
    caps: &Caps,
) -> Result<EasyTreeOutcome> {
    fam.validate_in(g)?;
    for i in 0..fam.members.len() {
        if !fam.member_vertices(i).is_subset(l) {
            return Err(Error::invalid(format!("member {i} leaves the subgraph")));
        }
    }
    let ext = Extended::build(g, l, loc, td, params, caps)?;
    let r = params.r;
    for (s_idx, s) in loc.separations.iter().enumerate() {
        let deep = s.side_a.difference(&g.ball(&s.separator(), r));
        for (i, m) in fam.members.iter().enumerate() {
            if let Some(j) = m.iter().position(|comp| comp.is_subset(&deep)) {
                return Err(Error::precondition(format!(
                    "separation {s_idx} (A = {:?}, B = {:?}): component {j} of member {i} lies in A away from the separator",
                    s.side_a.to_vec(),
                    s.side_b.to_vec()
                )));
            }
        }
    }
    let c = fam.component_count;
    let mut traces: Vec<Vec<VertexSet>> = vec![Vec::with_capacity(fam.members.len()); c];
    for (i, m) in fam.members.iter().enumerate() {
        for (j, comp) in m.iter().enumerate() {
            let thick = g.ball(comp, r).intersection(l);
            if !g.induces_connected(&thick) {
                return Err(Error::precondition(format!(
                    "component {j} of member {i}: its {r}-neighbourhood in the subgraph is disconnected"
                )));
            }
            let trace = ext.trace(&thick);
            if !ext.tree.induces_connected(&trace) {
                return Err(Error::InternalInconsistency(format!(
                    "trace of component {j} of member {i} is not a subtree"
                )));
            }
            traces[j].push(trace);
        }
    }
    if params.k == 0 {
        return Ok(EasyTreeOutcome::Packing { members: Vec::new() });
    }
    let need = c * params.k;
    for (j, fam_j) in traces.iter().enumerate() {
        let found = greedy(&ext.rooted, fam_j);
        if found.disjoint.len() < need {
            let (set, nodes) = ext.hitting_set(g, &found.tops, params);
            let outcome = EasyTreeOutcome::Hitting { set, nodes, component: j };
            check_hitting(g, &outcome, c, params, |z| {
                (0..fam.members.len()).all(|i| fam.member_vertices(i).intersects(z))
            })?;
            return Ok(outcome);
        }
    }
    let picks = multi_family_select(&ext.tree, &traces, &vec![params.k; c], need, caps)?;
    let members: Vec<PackedMember> = (0..params.k)
        .map(|b| {
            let sources: Vec<usize> = (0..c).map(|a| picks[a][b]).collect();
            let components = sources.iter().enumerate().map(|(a, &i)| fam.members[i][a].clone()).collect();
            PackedMember { sources, components }
        })
        .collect();
    if !far_apart(g, &members, r) {
        return Err(Error::InternalInconsistency(
            "members with disjoint traces are not farther than 2r apart".into(),
        ));
    }
    Ok(EasyTreeOutcome::Packing { members })
}

fn check_hitting(
    g: &Graph,
    outcome: &EasyTreeOutcome,
    c: usize,
    params: &EasyTreeParams,
    hits_all: impl FnOnce(&VertexSet) -> bool,
) -> Result<()> {
    let EasyTreeOutcome::Hitting { set, .. } = outcome else {
        return Ok(());
    };
    if !set.holds_in(g) {
        return Err(Error::InternalInconsistency("hitting set escapes its balls".into()));
    }
    if !set.within_budget(hitting_budget(c, params), params.eta + params.r) {
        return Err(Error::InternalInconsistency(format!(
            "{} centers exceed the budget of {}",
            set.center_count(),
            hitting_budget(c, params)
        )));
    }
    if !hits_all(&set.members) {
        return Err(Error::InternalInconsistency("hitting set misses a member".into()));
    }
    Ok(())
}

/// The same dichotomy for connected members known only through an oracle.
///
/// Walks the extended tree bottom-up and keeps a node whenever some member
/// avoiding the kept nodes has its whole trace below it; this is the
/// deepest-top greedy without listing the traces. The hypothesis that
/// thickened members stay connected inside `l` is the caller's to ensure.
pub fn easy_tree_hitting_with_oracle(
    g: &Graph,
    l: &VertexSet,
    oracle: &dyn MemberOracle,
    loc: &Location,
    td: &TreeDecomposition,
    params: &EasyTreeParams,
    caps: &Caps,
) -> Result<EasyTreeOutcome> {
    let ext = Extended::build(g, l, loc, td, params, caps)?;
    let r = params.r;
    for (s_idx, s) in loc.separations.iter().enumerate() {
        let deep = s.side_a.difference(&g.ball(&s.separator(), r));
        if oracle.member_within(&deep)?.is_some() {
            return Err(Error::precondition(format!(
                "separation {s_idx} (A = {:?}, B = {:?}): a member lies in A away from the separator",
                s.side_a.to_vec(),
                s.side_b.to_vec()
            )));
        }
    }
    if params.k == 0 {
        return Ok(EasyTreeOutcome::Packing { members: Vec::new() });
    }
    let nodes = ext.bags.len();
    let mut kept = VertexSet::new();
    let mut witnesses: Vec<Vec<VertexSet>> = Vec::new();
    for &t in &ext.rooted.bottom_up {
        let below = ext.rooted.descendants(t).difference(&kept);
        let mut outside = VertexSet::new();
        for u in (0..nodes).filter(|&u| !below.contains(u)) {
            outside.extend(ext.bags[u].iter());
        }
        let allowed = l.difference(&g.ball(&outside, r));
        if let Some(m) = oracle.member_within(&allowed)? {
            if m.len() != 1 {
                return Err(Error::invalid("the oracle route handles connected members only"));
            }
            kept.insert(t);
            witnesses.push(m);
            if witnesses.len() == params.k {
                break;
            }
        }
    }
    if witnesses.len() >= params.k {
        let members: Vec<PackedMember> = witnesses
            .into_iter()
            .enumerate()
            .map(|(i, components)| PackedMember {
                sources: vec![i],
                components,
            })
            .collect();
        if !far_apart(g, &members, r) {
            return Err(Error::InternalInconsistency(
                "members with disjoint traces are not farther than 2r apart".into(),
            ));
        }
        return Ok(EasyTreeOutcome::Packing { members });
    }
    let (set, used) = ext.hitting_set(g, &kept, params);
    let outcome = EasyTreeOutcome::Hitting {
        set,
        nodes: used,
        component: 0,
    };
    let mut missed = None;
    check_hitting(g, &outcome, 1, params, |z| {
        match oracle.member_within(&l.difference(z)) {
            Ok(found) => found.is_none(),
            Err(e) => {
                missed = Some(e);
                true
            }
        }
    })?;
    if let Some(e) = missed {
        return Err(e);
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separation::Separation;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn params(r: f64, k: usize, xi: usize) -> EasyTreeParams {
        EasyTreeParams { r, k, xi, eta: 0.0 }
    }

    #[test]
    fn single_member_packs_for_k_one() {
        let g = path(4);
        let all = g.all_vertices();
        let td = TreeDecomposition::min_degree(&g, &all).unwrap();
        let fam = ExchangeableFamily::connected(vec![VertexSet::from([1, 2])]).unwrap();
        let out = easy_tree_hitting(&g, &all, &fam, &Location::trivial(&all), &td, &params(1.0, 1, 2), &Caps::default())
            .unwrap();
        assert!(matches!(out, EasyTreeOutcome::Packing { members } if members.len() == 1));
    }

    #[test]
    fn long_subpaths_of_p9() {
        // subpaths with at least three vertices from the first three to the
        // last three vertices
        let g = path(9);
        let all = g.all_vertices();
        let td = TreeDecomposition::min_degree(&g, &all).unwrap();
        let mut members = Vec::new();
        for a in 0..3 {
            for b in 6..9 {
                members.push((a..=b).collect::<VertexSet>());
            }
        }
        let fam = ExchangeableFamily::connected(members.clone()).unwrap();
        let p = params(1.0, 2, 2);
        let out = easy_tree_hitting(&g, &all, &fam, &Location::trivial(&all), &td, &p, &Caps::default()).unwrap();
        let EasyTreeOutcome::Hitting { set, .. } = &out else {
            panic!("all members overlap, so no two are far apart");
        };
        assert!(set.center_count() <= 2);
        assert!(members.iter().all(|m| m.intersects(&set.members)));
        let via_oracle =
            easy_tree_hitting_with_oracle(&g, &all, &fam, &Location::trivial(&all), &td, &p, &Caps::default()).unwrap();
        assert_eq!(via_oracle, out);
    }

    #[test]
    fn far_members_are_packed() {
        let g = path(9);
        let all = g.all_vertices();
        let td = TreeDecomposition::min_degree(&g, &all).unwrap();
        let fam = ExchangeableFamily::connected(vec![VertexSet::from([0, 1]), VertexSet::from([4]), VertexSet::from([7, 8])]).unwrap();
        let p = params(1.0, 2, 2);
        let out = easy_tree_hitting(&g, &all, &fam, &Location::trivial(&all), &td, &p, &Caps::default()).unwrap();
        let EasyTreeOutcome::Packing { members } = out else { panic!() };
        assert_eq!(members.len(), 2);
        assert!(g.set_distance(&members[0].vertices(), &members[1].vertices()).unwrap() > 2.0);
    }

    #[test]
    fn member_deep_in_a_small_side_is_reported() {
        let g = path(7);
        let all = g.all_vertices();
        let sep = Separation::new(VertexSet::from([0, 1, 2, 3]), VertexSet::from([3, 4, 5, 6]));
        let loc = Location::new(vec![sep]);
        let core = loc.core(&all);
        let td = TreeDecomposition::min_degree(&g, &core).unwrap();
        let fam = ExchangeableFamily::connected(vec![VertexSet::from([0])]).unwrap();
        let err = easy_tree_hitting(&g, &all, &fam, &loc, &td, &params(1.0, 1, 2), &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("separation 0")));
        let near = ExchangeableFamily::connected(vec![VertexSet::from([2, 3, 4])]).unwrap();
        assert!(easy_tree_hitting(&g, &all, &near, &loc, &td, &params(1.0, 2, 2), &Caps::default()).is_ok());
    }

    #[test]
    fn two_component_members() {
        // a left piece and a right piece, combined freely
        let g = path(20);
        let all = g.all_vertices();
        let td = TreeDecomposition::min_degree(&g, &all).unwrap();
        let mut members = Vec::new();
        for a in [0, 2, 4, 6] {
            for b in [12, 14, 16, 18] {
                members.push(vec![VertexSet::from([a]), VertexSet::from([b])]);
            }
        }
        let fam = ExchangeableFamily::new(2, members).unwrap();
        assert_eq!(fam.sample_exchange(100, 7), None);
        let caps = Caps::default();
        let out = easy_tree_hitting(&g, &all, &fam, &Location::trivial(&all), &td, &params(0.0, 2, 2), &caps).unwrap();
        let EasyTreeOutcome::Packing { members } = out else { panic!() };
        assert!(members[0].vertices().is_disjoint(&members[1].vertices()));
        // only two distinct left pieces: four disjoint traces are not there
        let few = ExchangeableFamily::new(
            2,
            vec![
                vec![VertexSet::from([0]), VertexSet::from([12])],
                vec![VertexSet::from([2]), VertexSet::from([14])],
            ],
        )
        .unwrap();
        assert!(few.sample_exchange(100, 7).is_some());
        let out = easy_tree_hitting(&g, &all, &few, &Location::trivial(&all), &td, &params(0.0, 2, 2), &caps).unwrap();
        assert!(matches!(out, EasyTreeOutcome::Hitting { set, .. } if set.center_count() <= 6));
    }
}
