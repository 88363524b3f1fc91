//! The tangle defined by a family of connected subgraphs, and the
//! three-way outcome: a small hitting set, a balanced low-order
//! separation, or that tangle.

use serde::{Deserialize, Serialize};

use super::axioms::{check_axioms, Axiom, Tangle, TangleDefinition, TangleVerdict};
use super::separations::enumerate_separations_within;
use crate::bits::BitSet;
use crate::caps::Caps;
use crate::covering::exact_set_cover;
use crate::error::{Error, Result};
use crate::graph::{at_least, certify_centered, CenteredSet, Certification, Graph, SearchMode, VertexSet};
use crate::packing::{max_far_subfamily, Farness};
use crate::separation::Separation;

/// Why the family tangle does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TangleRefusal {
    /// Both sides of a low-order separation hold a far member.
    BothSidesHoldMembers,
    /// Neither side holds one.
    NeitherSideHoldsMember,
    /// Three oriented separations have A-sides covering the host.
    ThreeSidesCoverHost,
    /// An oriented separation has the whole host on its A-side.
    FullSide,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TangleBuild {
    Tangle(Tangle),
    Refused {
        reason: TangleRefusal,
        witness: Vec<Separation>,
    },
}

impl TangleBuild {
    pub fn tangle(&self) -> Option<&Tangle> {
        match self {
            TangleBuild::Tangle(t) => Some(t),
            TangleBuild::Refused { .. } => None,
        }
    }
}

/// Members of `family` (by index) avoiding `N≤r′[z]`.
pub(crate) fn clear_of(g: &Graph, family: &[VertexSet], idx: &[usize], z: &VertexSet, r_prime: f64) -> Vec<usize> {
    let ball = g.ball(z, r_prime);
    idx.iter().copied().filter(|&i| family[i].is_disjoint(&ball)).collect()
}

/// The members (by index) inside `side − N≤r′[V(A∩B)]`.
fn inside(family: &[VertexSet], idx: &[usize], side: &VertexSet, sep_ball: &VertexSet) -> Vec<usize> {
    idx.iter()
        .copied()
        .filter(|&i| family[i].is_subset(side) && family[i].is_disjoint(sep_ball))
        .collect()
}

pub(crate) fn check_family(g: &Graph, l: &VertexSet, family: &[VertexSet]) -> Result<()> {
    g.check_set(l)?;
    for (i, m) in family.iter().enumerate() {
        g.check_set(m)?;
        if !m.is_subset(l) {
            return Err(Error::invalid(format!("family member {i} leaves the host subgraph")));
        }
        if !g.induces_connected(m) {
            return Err(Error::invalid(format!("family member {i} is not connected")));
        }
    }
    Ok(())
}

/// Largest number of the given members pairwise at distance at least `r`.
pub(crate) fn far_count(g: &Graph, family: &[VertexSet], idx: &[usize], r: f64, caps: &Caps) -> Result<usize> {
    let sets: Vec<VertexSet> = idx.iter().map(|&i| family[i].clone()).collect();
    Ok(max_far_subfamily(g, &sets, Farness::AtLeast(r), caps.search_nodes)?.members.len())
}

/// At most `budget` centers whose `r′`-balls, cut down to `l`, meet every
/// listed member; exhaustive over all vertices of `g` as centers.
pub(crate) fn ball_hitting_centers(
    g: &Graph,
    l: &VertexSet,
    family: &[VertexSet],
    idx: &[usize],
    r_prime: f64,
    budget: usize,
    caps: &Caps,
) -> Result<Option<VertexSet>> {
    if idx.is_empty() {
        return Ok(Some(VertexSet::new()));
    }
    if budget == 0 {
        return Ok(None);
    }
    let covers: Vec<BitSet> = g
        .vertices()
        .map(|c| {
            let ball = g.vertex_ball(c, r_prime).intersection(l);
            let mut b = BitSet::new(idx.len());
            for (e, &i) in idx.iter().enumerate() {
                if family[i].intersects(&ball) {
                    b.insert(e);
                }
            }
            b
        })
        .collect();
    let cover = exact_set_cover(idx.len(), &covers, caps.search_nodes)?;
    Ok((cover.chosen.len() <= budget).then(|| cover.chosen.into_iter().collect()))
}

/// `(N≤r′[z] ∪ ⋃ N≤r′[c] ∩ l)` for the given centers.
pub(crate) fn grow(g: &Graph, l: &VertexSet, z: &VertexSet, centers: &VertexSet, r_prime: f64) -> VertexSet {
    g.ball(z, r_prime).union(&g.ball(centers, r_prime).intersection(l))
}

/// Builds the set of separations `(A, B)` of `G[l]` of order below `theta`
/// such that `A − N≤r′[V(A∩B)]` contains no member of `family − N≤r′[z]`
/// and `B − N≤r′[V(A∩B)]` contains one, and checks that it is a tangle.
pub fn build_family_tangle(
    g: &Graph,
    l: &VertexSet,
    family: &[VertexSet],
    r_prime: f64,
    theta: usize,
    z: &VertexSet,
    caps: &Caps,
) -> Result<TangleBuild> {
    check_family(g, l, family)?;
    g.check_set(z)?;
    if theta == 0 {
        return Err(Error::invalid("a tangle has order at least 1"));
    }
    let all = enumerate_separations_within(g, l, theta, caps)?;
    let idx: Vec<usize> = (0..family.len()).collect();
    let far = clear_of(g, family, &idx, z, r_prime);
    let mut members = Vec::new();
    for s in &all {
        let sep_ball = g.ball(&s.separator(), r_prime);
        let a_holds = !inside(family, &far, &s.side_a, &sep_ball).is_empty();
        let b_holds = !inside(family, &far, &s.side_b, &sep_ball).is_empty();
        match (a_holds, b_holds) {
            (true, true) => {
                return Ok(TangleBuild::Refused {
                    reason: TangleRefusal::BothSidesHoldMembers,
                    witness: vec![s.clone()],
                })
            }
            (false, false) => {
                return Ok(TangleBuild::Refused {
                    reason: TangleRefusal::NeitherSideHoldsMember,
                    witness: vec![s.clone()],
                })
            }
            (false, true) => members.push(s.clone()),
            (true, false) => members.push(s.flipped()),
        }
    }
    match check_axioms(g, l, theta, &members, &all) {
        None => Ok(TangleBuild::Tangle(Tangle {
            order: theta,
            within: l.clone(),
            members,
            definition: Some(TangleDefinition {
                family: family.to_vec(),
                r_prime,
                z: z.clone(),
            }),
        })),
        Some(TangleVerdict::Violated { axiom, witness }) => {
            let reason = match axiom {
                Axiom::T2 => TangleRefusal::ThreeSidesCoverHost,
                Axiom::T3 => TangleRefusal::FullSide,
                other => {
                    return Err(Error::InternalInconsistency(format!(
                        "oriented separations fail {other:?} by construction"
                    )))
                }
            };
            Ok(TangleBuild::Refused { reason, witness })
        }
        Some(TangleVerdict::Valid) => unreachable!("check_axioms reports only violations"),
    }
}

impl Tangle {
    /// Recomputes the members from the stored definition; `None` when there
    /// is no definition or it does not yield a tangle.
    pub fn rederive(&self, g: &Graph, caps: &Caps) -> Result<Option<Vec<Separation>>> {
        let Some(d) = &self.definition else {
            return Ok(None);
        };
        let built = build_family_tangle(g, &self.within, &d.family, d.r_prime, self.order, &d.z, caps)?;
        Ok(built.tangle().map(|t| t.members.clone()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrichotomyParams {
    /// Forbidden packing size.
    pub k: usize,
    /// Tangle order.
    pub theta: usize,
    /// Farness threshold for packings.
    pub r: f64,
    /// Ball radius, at least `r / 2`.
    pub r_prime: f64,
    /// Centers of the input set `z`.
    pub xi: usize,
    /// Radius of the input set `z`.
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TrichotomyOutcome {
    /// `z_star` contains `N≤r′[z]`, meets every member and is
    /// `(ξ + 3θ − 3, η + r′)`-centered; `added` certifies `Z* − N≤r′[z]`
    /// with `3θ − 3` balls of radius `r′`.
    Hitting { z_star: CenteredSet, added: CenteredSet },
    /// A separation of order below θ whose sides, minus the `r′`-ball of
    /// the separator, each hold fewer than `k − 1` pairwise far members
    /// avoiding `N≤r′[z]`.
    Split {
        separation: Separation,
        packing_a: usize,
        packing_b: usize,
    },
    Tangle { tangle: Tangle },
}

/// Validates the common hypotheses and returns the certificate for `z`.
pub(crate) fn check_hypotheses(
    g: &Graph,
    l: &VertexSet,
    family: &[VertexSet],
    z: &VertexSet,
    p: &TrichotomyParams,
    caps: &Caps,
) -> Result<CenteredSet> {
    check_family(g, l, family)?;
    g.check_set(z)?;
    if p.k == 0 || p.theta == 0 {
        return Err(Error::invalid("k and theta must be positive"));
    }
    if !(p.r >= 0.0) || !(p.eta >= 0.0) || !at_least(p.r_prime, p.r / 2.0) {
        return Err(Error::invalid(format!(
            "need r, eta >= 0 and r' >= r/2, got r = {}, r' = {}, eta = {}",
            p.r, p.r_prime, p.eta
        )));
    }
    let boundary = g.open_neighborhood(l);
    if !boundary.is_subset(z) {
        return Err(Error::precondition("z does not contain the neighborhood of the host subgraph"));
    }
    let mode = if g.vertex_count() <= caps.centered_vertices {
        SearchMode::Exact
    } else {
        SearchMode::Heuristic
    };
    let cert = match certify_centered(g, z, p.xi, p.eta, mode, caps)? {
        Certification::Centered(c) => c,
        Certification::Refused(r) => {
            return Err(Error::precondition(format!(
                "z is not certified ({}, {})-centered: {}",
                p.xi, p.eta, r.obligation
            )))
        }
    };
    let all: Vec<usize> = (0..family.len()).collect();
    let nu = far_count(g, family, &all, p.r, caps)?;
    if nu >= p.k {
        return Err(Error::precondition(format!(
            "the family has {nu} members pairwise at distance >= {}, not fewer than k = {}",
            p.r, p.k
        )));
    }
    Ok(cert)
}

/// A low-order separation whose sides each hold fewer than `limit`
/// pairwise far members of `far`, with the two packing sizes.
pub(crate) fn balanced_separation(
    g: &Graph,
    l: &VertexSet,
    family: &[VertexSet],
    far: &[usize],
    theta: usize,
    r: f64,
    r_prime: f64,
    limit: usize,
    caps: &Caps,
) -> Result<Option<(Separation, usize, usize)>> {
    if limit == 0 {
        return Ok(None);
    }
    for s in enumerate_separations_within(g, l, theta, caps)? {
        let sep_ball = g.ball(&s.separator(), r_prime);
        let a = far_count(g, family, &inside(family, far, &s.side_a, &sep_ball), r, caps)?;
        if a >= limit {
            continue;
        }
        let b = far_count(g, family, &inside(family, far, &s.side_b, &sep_ball), r, caps)?;
        if b < limit {
            return Ok(Some((s, a, b)));
        }
    }
    Ok(None)
}

/// Tries the hitting set (exhaustive center search), then a balanced
/// separation, then the family tangle. One of them always exists; if none
/// validates the result is an internal-inconsistency error.
pub fn tangle_trichotomy(
    g: &Graph,
    l: &VertexSet,
    family: &[VertexSet],
    z: &VertexSet,
    p: &TrichotomyParams,
    caps: &Caps,
) -> Result<TrichotomyOutcome> {
    let z_cert = check_hypotheses(g, l, family, z, p, caps)?;
    let all: Vec<usize> = (0..family.len()).collect();
    let far = clear_of(g, family, &all, z, p.r_prime);
    let extra = 3 * p.theta - 3;

    if let Some(centers) = ball_hitting_centers(g, l, family, &far, p.r_prime, extra, caps)? {
        let z_ball = g.ball(z, p.r_prime);
        let z_star = grow(g, l, z, &centers, p.r_prime);
        let out = TrichotomyOutcome::Hitting {
            z_star: CenteredSet {
                members: z_star.clone(),
                centers: z_cert.centers.union(&centers),
                radius: p.eta + p.r_prime,
            },
            added: CenteredSet {
                members: z_star.difference(&z_ball),
                centers,
                radius: p.r_prime,
            },
        };
        check_outcome(g, l, family, z, p, &out, caps)?;
        return Ok(out);
    }

    if let Some((separation, packing_a, packing_b)) =
        balanced_separation(g, l, family, &far, p.theta, p.r, p.r_prime, p.k - 1, caps)?
    {
        let out = TrichotomyOutcome::Split {
            separation,
            packing_a,
            packing_b,
        };
        check_outcome(g, l, family, z, p, &out, caps)?;
        return Ok(out);
    }

    match build_family_tangle(g, l, family, p.r_prime, p.theta, z, caps)? {
        TangleBuild::Tangle(tangle) => {
            let out = TrichotomyOutcome::Tangle { tangle };
            check_outcome(g, l, family, z, p, &out, caps)?;
            Ok(out)
        }
        TangleBuild::Refused { reason, witness } => Err(Error::InternalInconsistency(format!(
            "no hitting set, no balanced separation, and the family tangle is refused ({reason:?} at {:?})",
            witness
                .iter()
                .map(|s| (s.side_a.to_vec(), s.side_b.to_vec()))
                .collect::<Vec<_>>()
        ))),
    }
}

/// Rechecks an outcome's certificate from scratch.
pub fn check_outcome(
    g: &Graph,
    l: &VertexSet,
    family: &[VertexSet],
    z: &VertexSet,
    p: &TrichotomyParams,
    out: &TrichotomyOutcome,
    caps: &Caps,
) -> Result<()> {
    let fail = |m: String| Err(Error::InternalInconsistency(m));
    match out {
        TrichotomyOutcome::Hitting { z_star, added } => {
            let z_ball = g.ball(z, p.r_prime);
            let extra = 3 * p.theta - 3;
            if !z_star.holds_in(g) || !z_star.within_budget(p.xi + extra, p.eta + p.r_prime) {
                return fail("hitting set exceeds its centered budget".into());
            }
            if !added.holds_in(g) || !added.within_budget(extra, p.r_prime) {
                return fail("added part exceeds its centered budget".into());
            }
            if added.members != z_star.members.difference(&z_ball) {
                return fail("added part is not the hitting set minus the grown input".into());
            }
            if !z_ball.is_subset(&z_star.members) || !z_star.members.is_subset(&z_ball.union(l)) {
                return fail("hitting set is not sandwiched between N[z] and N[z] plus the host".into());
            }
            if let Some(i) = family.iter().position(|m| !m.intersects(&z_star.members)) {
                return fail(format!("hitting set misses family member {i}"));
            }
        }
        TrichotomyOutcome::Split {
            separation,
            packing_a,
            packing_b,
        } => {
            if !separation.is_valid_in(g, l) || separation.order() >= p.theta {
                return fail("split is not a low-order separation of the host".into());
            }
            let all: Vec<usize> = (0..family.len()).collect();
            let far = clear_of(g, family, &all, z, p.r_prime);
            let sep_ball = g.ball(&separation.separator(), p.r_prime);
            let a = far_count(g, family, &inside(family, &far, &separation.side_a, &sep_ball), p.r, caps)?;
            let b = far_count(g, family, &inside(family, &far, &separation.side_b, &sep_ball), p.r, caps)?;
            if a != *packing_a || b != *packing_b || a + 1 >= p.k || b + 1 >= p.k {
                return fail(format!("split sides pack {a} and {b} members, k = {}", p.k));
            }
        }
        TrichotomyOutcome::Tangle { tangle } => {
            let all = enumerate_separations_within(g, l, tangle.order, caps)?;
            if let Some(v) = check_axioms(g, l, tangle.order, &tangle.members, &all) {
                return fail(format!("returned tangle fails verification: {v:?}"));
            }
            if tangle.order != p.theta || tangle.within != *l {
                return fail("returned tangle has the wrong order or host".into());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn params(k: usize, theta: usize, r: f64) -> TrichotomyParams {
        TrichotomyParams {
            k,
            theta,
            r,
            r_prime: r / 2.0,
            xi: 0,
            eta: 0.0,
        }
    }

    #[test]
    fn empty_family_is_refused_and_hit_by_nothing() {
        let g = path(4);
        let all = g.all_vertices();
        let b = build_family_tangle(&g, &all, &[], 1.0, 1, &VertexSet::new(), &Caps::default()).unwrap();
        assert!(matches!(
            b,
            TangleBuild::Refused {
                reason: TangleRefusal::NeitherSideHoldsMember,
                ..
            }
        ));
        let out = tangle_trichotomy(&g, &all, &[], &VertexSet::new(), &params(1, 1, 2.0), &Caps::default()).unwrap();
        match out {
            TrichotomyOutcome::Hitting { z_star, .. } => assert!(z_star.members.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn one_far_member_orients_towards_it() {
        let g = path(8);
        let all = g.all_vertices();
        let fam: Vec<VertexSet> = (4..7).map(|i| set(&[i, i + 1])).collect();
        let b = build_family_tangle(&g, &all, &fam, 0.5, 2, &VertexSet::new(), &Caps::default()).unwrap();
        let t = b.tangle().expect("tangle");
        assert!(super::super::verify_tangle(&g, t, &Caps::default()).unwrap().is_valid());
        let cut = Separation::new(set(&[0, 1, 2, 3]), set(&[3, 4, 5, 6, 7]));
        assert!(t.members.contains(&cut));
        assert_eq!(t.rederive(&g, &Caps::default()).unwrap().unwrap(), t.members);
    }

    #[test]
    fn far_members_on_both_sides_give_a_split() {
        // two far components, one member each
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let all = g.all_vertices();
        let fam = vec![set(&[0, 1]), set(&[4, 5])];
        let b = build_family_tangle(&g, &all, &fam, 1.0, 1, &VertexSet::new(), &Caps::default()).unwrap();
        assert!(matches!(
            b,
            TangleBuild::Refused {
                reason: TangleRefusal::BothSidesHoldMembers,
                ..
            }
        ));
        let out = tangle_trichotomy(&g, &all, &fam, &VertexSet::new(), &params(3, 1, 2.0), &Caps::default()).unwrap();
        match out {
            TrichotomyOutcome::Split { separation, .. } => assert_eq!(separation.order(), 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rows_of_a_grid_give_a_tangle_of_order_one() {
        let (w, h) = (9, 3);
        let mut edges = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let v = y * w + x;
                if x + 1 < w {
                    edges.push((v, v + 1));
                }
                if y + 1 < h {
                    edges.push((v, v + w));
                }
            }
        }
        let g = Graph::new(w * h, edges).unwrap();
        let all = g.all_vertices();
        let rows: Vec<VertexSet> = (0..h).map(|y| (y * w..(y + 1) * w).collect()).collect();
        let out = tangle_trichotomy(&g, &all, &rows, &VertexSet::new(), &params(2, 1, 3.0), &Caps::default()).unwrap();
        assert!(matches!(out, TrichotomyOutcome::Tangle { .. }));
    }

    #[test]
    fn hypotheses_are_enforced() {
        let g = path(6);
        let all = g.all_vertices();
        let fam = vec![set(&[0]), set(&[5])];
        let e = tangle_trichotomy(&g, &all, &fam, &VertexSet::new(), &params(2, 1, 2.0), &Caps::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
        let inner = set(&[1, 2, 3]);
        let e = tangle_trichotomy(&g, &inner, &[set(&[2])], &VertexSet::new(), &params(2, 1, 2.0), &Caps::default());
        assert!(matches!(e, Err(Error::Precondition(m)) if m.contains("neighborhood")));
    }
}
