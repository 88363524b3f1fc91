//! Repeated trichotomy: split along balanced separations until every piece
//! is either hit by a few balls or carries a family tangle.

use serde::{Deserialize, Serialize};

use super::axioms::{verify_tangle, Tangle};
use super::lemma::{
    balanced_separation, ball_hitting_centers, build_family_tangle, check_hypotheses, clear_of, far_count, grow,
    TangleBuild, TrichotomyParams,
};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{certify_centered, CenteredSet, Graph, SearchMode, VertexSet};
use crate::separation::Separation;

/// Largest `k` accepted by [`tangle_decompose`].
pub const DECOMPOSE_MAX_K: usize = 3;
/// Largest tangle order accepted by [`tangle_decompose`].
pub const DECOMPOSE_MAX_THETA: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecomposeParams {
    /// Nondecreasing tangle orders, one per level; `k` is their count.
    pub thetas: Vec<usize>,
    pub r: f64,
    pub r_prime: f64,
    pub xi: usize,
    pub eta: f64,
}

impl DecomposeParams {
    pub fn k(&self) -> usize {
        self.thetas.len()
    }

    /// `3θ₁ − 3 + 2·Σ_{2≤j≤i} (3θⱼ − 3)`.
    pub fn budget(&self, i: usize) -> usize {
        let first = 3 * self.thetas[0] - 3;
        first + (2..=i).map(|j| 2 * (3 * self.thetas[j - 1] - 3)).sum::<usize>()
    }
}

/// A region carrying a family tangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangleRegion {
    pub vertices: VertexSet,
    /// Recursion depth at which the region was found; its tangle has order
    /// `thetas[level]`.
    pub level: usize,
    /// The part of the hitting set responsible for this region.
    pub local_hitting: VertexSet,
    /// `local_hitting − N≤2r′[z]` with its centers at radius `2r′`.
    pub local_outer: CenteredSet,
    pub tangle: Tangle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// The hitting set with centers at radius `η + 2r′`.
    pub z_star: CenteredSet,
    /// `Z* − N≤2r′[z]` with centers at radius `2r′`.
    pub outer: CenteredSet,
    pub regions: Vec<TangleRegion>,
    /// Balanced separations used along the way.
    pub splits: Vec<Separation>,
}

struct Part {
    vertices: VertexSet,
    level: usize,
    z_h: VertexSet,
    centers: VertexSet,
}

struct Piece {
    z_star: VertexSet,
    centers: VertexSet,
    parts: Vec<Part>,
    splits: Vec<Separation>,
}

struct Ctx<'a> {
    g: &'a Graph,
    family: &'a [VertexSet],
    r: f64,
    r_prime: f64,
    caps: &'a Caps,
}

/// Finds a hitting set `Z*` and at most `k − 1` disjoint regions of `l`,
/// each carrying a family tangle, such that `Z*` meets every member not
/// inside a region. Every conclusion is rechecked before returning.
pub fn tangle_decompose(
    g: &Graph,
    l: &VertexSet,
    family: &[VertexSet],
    z: &VertexSet,
    p: &DecomposeParams,
    caps: &Caps,
) -> Result<Decomposition> {
    let k = p.k();
    if k == 0 {
        return Err(Error::invalid("need at least one tangle order"));
    }
    if p.thetas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("tangle orders must be nondecreasing"));
    }
    if k > DECOMPOSE_MAX_K {
        return Err(Error::Capacity {
            what: "decomposition k",
            limit: DECOMPOSE_MAX_K,
            actual: k,
        });
    }
    let top = *p.thetas.last().expect("k >= 1");
    if top > DECOMPOSE_MAX_THETA {
        return Err(Error::Capacity {
            what: "decomposition tangle order",
            limit: DECOMPOSE_MAX_THETA,
            actual: top,
        });
    }
    if l.len() > caps.separation_vertices {
        return Err(Error::Capacity {
            what: "decomposition host",
            limit: caps.separation_vertices,
            actual: l.len(),
        });
    }
    let hyp = TrichotomyParams {
        k,
        theta: p.thetas[0],
        r: p.r,
        r_prime: p.r_prime,
        xi: p.xi,
        eta: p.eta,
    };
    let z_cert = check_hypotheses(g, l, family, z, &hyp, caps)?;
    let ctx = Ctx {
        g,
        family,
        r: p.r,
        r_prime: p.r_prime,
        caps,
    };
    let all: Vec<usize> = (0..family.len()).collect();
    let piece = solve(&ctx, l, &all, k, &p.thetas, z)?;

    let outer_ball = g.ball(z, 2.0 * p.r_prime);
    let mut regions = Vec::with_capacity(piece.parts.len());
    for part in piece.parts {
        let level = part.level;
        let inner: Vec<VertexSet> = family.iter().filter(|m| m.is_subset(&part.vertices)).cloned().collect();
        let tangle = match build_family_tangle(g, &part.vertices, &inner, p.r_prime, p.thetas[level], &piece.z_star, caps)? {
            TangleBuild::Tangle(t) => t,
            TangleBuild::Refused { reason, .. } => {
                return Err(Error::InternalInconsistency(format!(
                    "region {:?} carries no tangle of order {}: {reason:?}",
                    part.vertices.to_vec(),
                    p.thetas[level]
                )))
            }
        };
        regions.push(TangleRegion {
            local_outer: CenteredSet {
                members: part.z_h.difference(&outer_ball),
                centers: part.centers,
                radius: 2.0 * p.r_prime,
            },
            vertices: part.vertices,
            level,
            local_hitting: part.z_h,
            tangle,
        });
    }
    let outer = CenteredSet {
        members: piece.z_star.difference(&outer_ball),
        centers: piece.centers.clone(),
        radius: 2.0 * p.r_prime,
    };
    let out = Decomposition {
        z_star: CenteredSet {
            members: piece.z_star,
            centers: z_cert.centers.union(&piece.centers),
            radius: p.eta + 2.0 * p.r_prime,
        },
        outer,
        regions,
        splits: piece.splits,
    };
    check_decomposition(g, l, family, z, p, &out, caps)?;
    Ok(out)
}

fn solve(ctx: &Ctx, l: &VertexSet, fam: &[usize], k: usize, thetas: &[usize], z: &VertexSet) -> Result<Piece> {
    let g = ctx.g;
    let r_prime = ctx.r_prime;
    let z_ball = g.ball(z, r_prime);
    if k <= 1 {
        if !fam.is_empty() {
            return Err(Error::InternalInconsistency("nonempty family at k = 1".into()));
        }
        return Ok(leaf(z_ball, Vec::new()));
    }
    let sub: Vec<VertexSet> = fam.iter().map(|&i| ctx.family[i].clone()).collect();
    let local: Vec<usize> = (0..sub.len()).collect();
    let far = clear_of(g, &sub, &local, z, r_prime);
    let theta = thetas[0];

    if let Some(centers) = ball_hitting_centers(g, l, &sub, &far, r_prime, 3 * theta - 3, ctx.caps)? {
        return Ok(Piece {
            z_star: grow(g, l, z, &centers, r_prime),
            centers,
            parts: Vec::new(),
            splits: Vec::new(),
        });
    }

    if let TangleBuild::Tangle(t) = build_family_tangle(g, l, &sub, r_prime, theta, z, ctx.caps)? {
        if build_family_tangle(g, l, &sub, r_prime, theta, &z_ball, ctx.caps)?
            .tangle()
            .is_some()
        {
            let core = g
                .components_within(l)
                .into_iter()
                .find(|c| t.members.contains(&Separation::new(l.difference(c), c.clone())))
                .ok_or_else(|| Error::InternalInconsistency("tangle points at no component".into()))?;
            return Ok(leaf(
                z_ball.clone(),
                vec![Part {
                    vertices: core,
                    level: 0,
                    z_h: z_ball,
                    centers: VertexSet::new(),
                }],
            ));
        }
        // some member of the first tangle leaves the second one
        let far2 = clear_of(g, &sub, &local, &z_ball, r_prime);
        let cut = t
            .members
            .iter()
            .find(|s| {
                let sep_ball = g.ball(&s.separator(), r_prime);
                let holds = |side: &VertexSet| {
                    far2.iter()
                        .any(|&i| sub[i].is_subset(side) && sub[i].is_disjoint(&sep_ball))
                };
                holds(&s.side_a) || !holds(&s.side_b)
            })
            .ok_or_else(|| Error::InternalInconsistency("the two tangles coincide".into()))?;
        let sep = cut.separator();
        let z_star = g
            .ball(z, 2.0 * r_prime)
            .union(&g.ball(&sep, r_prime))
            .intersection(l)
            .union(&z_ball);
        return Ok(Piece {
            z_star,
            centers: sep,
            parts: Vec::new(),
            splits: Vec::new(),
        });
    }

    let nu = far_count(g, &sub, &local, ctx.r, ctx.caps)?;
    let (cut, _, _) = balanced_separation(g, l, &sub, &far, theta, ctx.r, r_prime, nu, ctx.caps)?
        .ok_or_else(|| {
            Error::InternalInconsistency("no hitting set, no tangle and no balanced separation".into())
        })?;
    let sep = cut.separator();
    let z2 = z.union(&sep);
    let z2_ball = g.ball(&z2, r_prime);
    let mut out = Piece {
        z_star: VertexSet::new(),
        centers: sep.clone(),
        parts: Vec::new(),
        splits: vec![cut.clone()],
    };
    let mut total = 0;
    for side in [&cut.side_a, &cut.side_b] {
        let part_l = side.difference(&sep);
        let part_fam: Vec<usize> = fam
            .iter()
            .copied()
            .filter(|&i| ctx.family[i].is_subset(&part_l) && ctx.family[i].is_disjoint(&z2_ball))
            .collect();
        let a = far_count(g, ctx.family, &part_fam, ctx.r, ctx.caps)?;
        total += a;
        if a + 2 > thetas.len() {
            return Err(Error::InternalInconsistency(format!(
                "a side packs {a} members, too many for {} remaining orders",
                thetas.len()
            )));
        }
        let inner = solve(ctx, &part_l, &part_fam, a + 1, &thetas[1..a + 2], &z2)?;
        out.z_star = out.z_star.union(&inner.z_star);
        out.centers = out.centers.union(&inner.centers);
        out.splits.extend(inner.splits);
        for part in inner.parts {
            out.parts.push(Part {
                level: part.level + 1,
                centers: part.centers.union(&sep),
                ..part
            });
        }
    }
    if total > nu {
        return Err(Error::InternalInconsistency(format!(
            "the two sides pack {total} members together, more than {nu}"
        )));
    }
    Ok(out)
}

fn leaf(z_star: VertexSet, parts: Vec<Part>) -> Piece {
    Piece {
        z_star,
        centers: VertexSet::new(),
        parts,
        splits: Vec::new(),
    }
}

/// Rechecks every conclusion of a decomposition from scratch.
pub fn check_decomposition(
    g: &Graph,
    l: &VertexSet,
    family: &[VertexSet],
    z: &VertexSet,
    p: &DecomposeParams,
    d: &Decomposition,
    caps: &Caps,
) -> Result<()> {
    let fail = |m: String| Err(Error::InternalInconsistency(m));
    let k = p.k();
    let two = 2.0 * p.r_prime;
    let z_ball = g.ball(z, p.r_prime);
    let outer_ball = g.ball(z, two);
    let zs = &d.z_star.members;

    if !z_ball.is_subset(zs) || !zs.is_subset(&z_ball.union(l)) {
        return fail("hitting set is not sandwiched between N[z] and N[z] plus the host".into());
    }
    if d.regions.len() + 1 > k {
        return fail(format!("{} regions for k = {k}", d.regions.len()));
    }
    let rest = l.difference(zs);
    let rest_components = g.components_within(&rest);
    for (i, h) in d.regions.iter().enumerate() {
        let hv = &h.vertices;
        if !hv.is_subset(l) || !g.induces_connected(hv) {
            return fail(format!("region {i} is not a connected part of the host"));
        }
        if d.regions[..i].iter().any(|o| o.vertices.intersects(hv)) {
            return fail(format!("region {i} overlaps an earlier one"));
        }
        let inner: Vec<usize> = (0..family.len()).filter(|&j| family[j].is_subset(hv)).collect();
        let nu_h = far_count(g, family, &inner, p.r, caps)?;
        if h.level > nu_h {
            return fail(format!("region {i} has level {} above its packing number {nu_h}", h.level));
        }
        let zh = &h.local_hitting;
        if !zh.is_subset(zs) {
            return fail(format!("region {i}: local hitting set leaves Z*"));
        }
        let must: VertexSet = g.open_neighborhood(hv).union(&zs.intersection(hv).difference(&z_ball));
        if !must.is_subset(zh) {
            return fail(format!("region {i}: local hitting set misses the boundary or Z* inside"));
        }
        let lo = &h.local_outer;
        if lo.members != zh.difference(&outer_ball)
            || !lo.holds_in(g)
            || !lo.within_budget(p.budget(h.level), two)
            || (h.level == 0 && !lo.members.is_empty())
        {
            return fail(format!("region {i}: local outer part exceeds its budget"));
        }
        if !verify_tangle(g, &h.tangle, caps)?.is_valid() || h.tangle.order != p.thetas[h.level] {
            return fail(format!("region {i}: tangle fails verification"));
        }
        match &h.tangle.definition {
            Some(def) if def.z == *zs && h.tangle.within == *hv => {}
            _ => return fail(format!("region {i}: tangle is not defined relative to Z*")),
        }
        if rest_components.iter().any(|c| c.intersects(hv) && !c.is_subset(hv)) {
            return fail(format!("region {i} cuts a component of the host minus Z*"));
        }
    }

    let budget = p.budget(k - 1);
    if d.outer.members != zs.difference(&outer_ball) || !d.outer.holds_in(g) || !d.outer.within_budget(budget, two) {
        return fail("outer part exceeds its centered budget".into());
    }
    if g.vertex_count() <= caps.centered_vertices
        && !certify_centered(g, &d.outer.members, budget, two, SearchMode::Exact, caps)?.is_centered()
    {
        return fail("exhaustive search refuses the outer budget".into());
    }
    if !d.z_star.holds_in(g) || !d.z_star.within_budget(p.xi + budget, p.eta + two) {
        return fail("hitting set exceeds its centered budget".into());
    }
    for (j, m) in family.iter().enumerate() {
        let covered = d.regions.iter().any(|h| m.is_subset(&h.vertices));
        if !covered && !m.intersects(zs) {
            return fail(format!("family member {j} is neither hit nor inside a region"));
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

    fn params(thetas: &[usize], r: f64) -> DecomposeParams {
        DecomposeParams {
            thetas: thetas.to_vec(),
            r,
            r_prime: r / 2.0,
            xi: 0,
            eta: 0.0,
        }
    }

    #[test]
    fn k_one_returns_the_grown_input() {
        let g = path(5);
        let all = g.all_vertices();
        let d = tangle_decompose(&g, &all, &[], &VertexSet::new(), &params(&[1], 2.0), &Caps::default()).unwrap();
        assert!(d.z_star.members.is_empty());
        assert!(d.regions.is_empty());
    }

    #[test]
    fn one_member_on_a_path() {
        let g = path(7);
        let all = g.all_vertices();
        let fam = vec![set(&[5, 6])];
        let d = tangle_decompose(&g, &all, &fam, &VertexSet::new(), &params(&[1, 1], 2.0), &Caps::default()).unwrap();
        assert!(d.regions.len() <= 1);
        assert_eq!(d.regions.len(), 1);
        assert_eq!(d.regions[0].vertices, all);
    }

    #[test]
    fn disconnected_host_splits_once() {
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let all = g.all_vertices();
        let fam = vec![set(&[0, 1]), set(&[4, 5])];
        let d = tangle_decompose(&g, &all, &fam, &VertexSet::new(), &params(&[1, 1, 1], 2.0), &Caps::default()).unwrap();
        assert_eq!(d.splits.len(), 1);
        assert_eq!(d.splits[0].order(), 0);
        assert_eq!(d.regions.len(), 2);
        assert!(d.regions.iter().all(|h| h.level == 1));
    }

    #[test]
    fn orders_must_not_decrease() {
        let g = path(3);
        let e = tangle_decompose(&g, &g.all_vertices(), &[], &VertexSet::new(), &params(&[2, 1], 2.0), &Caps::default());
        assert!(matches!(e, Err(Error::InvalidInput(_))));
    }
}
