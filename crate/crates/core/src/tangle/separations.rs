//! Exhaustive enumeration of low-order separations.

use std::collections::BTreeSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::separation::Separation;

/// All separations of `g` of order below `theta`, one per unordered pair.
pub fn enumerate_separations(g: &Graph, theta: usize, caps: &Caps) -> Result<Vec<Separation>> {
    enumerate_separations_within(g, &g.all_vertices(), theta, caps)
}

/// All separations of `G[within]` of order below `theta`.
///
/// Each is reported once, in the orientation that is smaller in the derived
/// order of [`Separation`], and the list is sorted by (order, separation).
/// A separation is determined by its separator and by which components of
/// `G[within] − S` go to side A, so this is every one of them. Order-0
/// enumeration only bipartitions components and is capped on their number
/// instead of the vertex count.
pub fn enumerate_separations_within(
    g: &Graph,
    within: &VertexSet,
    theta: usize,
    caps: &Caps,
) -> Result<Vec<Separation>> {
    g.check_set(within)?;
    if theta == 0 {
        return Ok(Vec::new());
    }
    if theta > caps.max_theta {
        return Err(Error::Capacity {
            what: "separation order",
            limit: caps.max_theta,
            actual: theta,
        });
    }
    if theta > 1 && within.len() > caps.separation_vertices {
        return Err(Error::Capacity {
            what: "separation enumeration",
            limit: caps.separation_vertices,
            actual: within.len(),
        });
    }
    let vertices = within.to_vec();
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    let mut failure = None;
    for_each_subset(&vertices, theta - 1, 0, &mut chosen, &mut |sep| {
        if failure.is_some() {
            return;
        }
        let separator: VertexSet = sep.iter().copied().collect();
        let rest = within.difference(&separator);
        let comps = g.components_within(&rest);
        if comps.len() > caps.separation_vertices {
            failure = Some(Error::Capacity {
                what: "components to bipartition",
                limit: caps.separation_vertices,
                actual: comps.len(),
            });
            return;
        }
        for mask in 0u32..1 << comps.len() {
            let mut a = separator.clone();
            let mut b = separator.clone();
            for (i, c) in comps.iter().enumerate() {
                let side = if mask >> i & 1 == 1 { &mut a } else { &mut b };
                side.extend(c.iter());
            }
            let s = Separation::new(a, b);
            let flip = s.flipped();
            found.insert(if flip < s { flip } else { s });
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let mut out: Vec<Separation> = found.into_iter().collect();
    out.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.cmp(y)));
    Ok(out)
}

/// Calls `f` on every subset of `items[start..]` extended to `chosen`, of
/// total size at most `max`, in lexicographic order.
fn for_each_subset(
    items: &[Vertex],
    max: usize,
    start: usize,
    chosen: &mut Vec<Vertex>,
    f: &mut impl FnMut(&[Vertex]),
) {
    f(chosen);
    if chosen.len() == max {
        return;
    }
    for i in start..items.len() {
        chosen.push(items[i]);
        for_each_subset(items, max, i + 1, chosen, f);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn edgeless_pair() {
        let g = Graph::new(2, []).unwrap();
        let seps = enumerate_separations(&g, 1, &caps()).unwrap();
        assert_eq!(
            seps,
            vec![
                Separation::new(VertexSet::new(), VertexSet::from([0, 1])),
                Separation::new(VertexSet::from([0]), VertexSet::from([1])),
            ]
        );
    }

    #[test]
    fn triangle_has_only_the_trivial_cut_at_order_zero() {
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let seps = enumerate_separations(&k3, 1, &caps()).unwrap();
        assert_eq!(seps, vec![Separation::new(VertexSet::new(), VertexSet::from([0, 1, 2]))]);
        assert!(enumerate_separations(&k3, 0, &caps()).unwrap().is_empty());
    }

    #[test]
    fn every_listed_separation_is_valid() {
        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let all = c5.all_vertices();
        let seps = enumerate_separations(&c5, 3, &caps()).unwrap();
        for s in &seps {
            assert!(s.is_valid_in(&c5, &all));
            assert!(s.order() < 3);
        }
        // one singleton cut per vertex: ({v}, V)
        assert_eq!(seps.iter().filter(|s| s.order() == 1).count(), 5);
    }

    #[test]
    fn caps_are_hard_errors() {
        let g = Graph::new(12, (1..12).map(|i| (i - 1, i))).unwrap();
        assert!(enumerate_separations(&g, 2, &caps()).unwrap_err().is_capacity());
        assert!(enumerate_separations(&g, 1, &caps()).is_ok());
        assert!(enumerate_separations(&g, 9, &caps()).unwrap_err().is_capacity());
    }
}
