//! Pulling a hitting set back along a quasi-isometry.

use serde::{Deserialize, Serialize};

use super::quasi::QuasiIsometry;
use crate::caps::Caps;
use crate::covering::hits_path_family;
use crate::error::{Error, Result};
use crate::graph::{at_least, at_most, less_than, Graph, Vertex, VertexSet};
use crate::paths::{PathFamily, PathWitness};

/// The source-side family `(ℓ, a, b)` and the packing parameters `(k, r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PullbackParams {
    pub a: VertexSet,
    pub b: VertexSet,
    pub k: usize,
    pub r: f64,
    pub ell: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pullback {
    pub ell_prime: f64,
    pub ell_second: f64,
    /// `(y, x_y)` for every `y` of the target set.
    pub representatives: Vec<(Vertex, Vertex)>,
    pub z2: VertexSet,
    pub z3: VertexSet,
    /// Near-geodesic short members, pairwise at distance at least `r`.
    pub collection: Vec<PathWitness>,
    pub z4: VertexSet,
    /// `z3 ∪ z4`.
    pub set: VertexSet,
}

/// Turns a set hitting every `(ℓ′, ι(A), ι(B))`-path of the target into one
/// hitting every `(ℓ, A, B)`-path of the source, with `ℓ′ = mℓ + 3a`.
///
/// Each target vertex is represented by the lowest-index source vertex whose
/// image is nearest to it; those representatives are fattened by
/// `m(m+2a+1)`. Members with ends closer than `ℓ″ = (ℓ′+a)m` escape that
/// set, so a maximal `r`-far collection of short near-geodesic members is
/// built greedily (fewest hops first, then by vertex sequence) and its
/// `(r+ℓ″+1)`-neighborhood is added.
///
/// Errors with a precondition failure when the target set misses a member,
/// when some target vertex is farther than `a` from the image, or when the
/// collection reaches `k` paths (the source then packs `k` far members).
pub fn pullback_hitting_set(
    src: &Graph,
    tgt: &Graph,
    q: &QuasiIsometry,
    z_target: &VertexSet,
    params: &PullbackParams,
    caps: &Caps,
) -> Result<Pullback> {
    q.validate(src, tgt)?;
    tgt.check_set(z_target)?;
    src.check_set(&params.a)?;
    src.check_set(&params.b)?;
    if !(params.r.is_finite() && params.r > 0.0) {
        return Err(Error::invalid(format!("separation {} must be positive", params.r)));
    }
    if !(params.ell.is_finite() && params.ell >= 0.0) {
        return Err(Error::invalid(format!("path threshold {} must be nonnegative", params.ell)));
    }
    let (m, a) = (q.m, q.a);
    let ell_prime = m * params.ell + 3.0 * a;
    let ell_second = (ell_prime + a) * m;
    let target_family = PathFamily::lxy(ell_prime, q.image(&params.a), q.image(&params.b));
    if !hits_path_family(tgt, &target_family, z_target) {
        return Err(Error::precondition(format!(
            "target set misses an ({ell_prime}, ι(A), ι(B))-path"
        )));
    }

    let mut representatives = Vec::with_capacity(z_target.len());
    for y in z_target.iter() {
        let (d, x) = src
            .vertices()
            .map(|x| (tgt.dist(q.map[x], y), x))
            .min_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)))
            .ok_or(Error::EmptySet("source"))?;
        if !at_most(d, a) {
            return Err(Error::precondition(format!(
                "target vertex {y} is {d} from the image, more than {a}"
            )));
        }
        representatives.push((y, x));
    }
    let z2: VertexSet = representatives.iter().map(|&(_, x)| x).collect();
    let z3 = src.neighborhood(&z2, m * (m + 2.0 * a + 1.0))?;

    let candidates = short_members(src, params, ell_second, caps)?;
    let mut collection: Vec<PathWitness> = Vec::new();
    let mut chosen_sets: Vec<VertexSet> = Vec::new();
    for p in candidates {
        let set = p.vertex_set();
        if chosen_sets
            .iter()
            .all(|c| at_least(src.set_distance_unchecked(c, &set), params.r))
        {
            chosen_sets.push(set);
            collection.push(p);
        }
    }
    if collection.len() >= params.k {
        return Err(Error::precondition(format!(
            "source holds {} pairwise {}-far members",
            collection.len(),
            params.r
        )));
    }
    let union = chosen_sets.iter().fold(VertexSet::new(), |acc, s| acc.union(s));
    let z4 = src.neighborhood(&union, params.r + ell_second + 1.0)?;
    let set = z3.union(&z4);
    Ok(Pullback {
        ell_prime,
        ell_second,
        representatives,
        z2,
        z3,
        collection,
        z4,
        set,
    })
}

/// Simple paths from `a` to `b` with `ℓ ≤ d(s,t) < ℓ″` and length at most
/// `d(s,t) + 1`, one orientation each, sorted by hop count then sequence.
fn short_members(g: &Graph, params: &PullbackParams, ell_second: f64, caps: &Caps) -> Result<Vec<PathWitness>> {
    let ends = params.a.union(&params.b);
    let limit = ell_second + 1.0;
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for s in ends.iter() {
        let mut path = vec![s];
        on_path[s] = true;
        let mut search = ShortSearch {
            g,
            params,
            ell_second,
            limit,
            cap: caps.candidate_paths,
            out: &mut out,
        };
        let res = search.extend(&mut path, &mut on_path, 0.0);
        on_path[s] = false;
        res?;
    }
    let mut paths: Vec<PathWitness> = out.into_iter().map(|p| PathWitness::from_trusted(g, p)).collect();
    paths.sort_by(|x, y| x.hop_length().cmp(&y.hop_length()).then_with(|| x.sequence.cmp(&y.sequence)));
    Ok(paths)
}

struct ShortSearch<'a> {
    g: &'a Graph,
    params: &'a PullbackParams,
    ell_second: f64,
    limit: f64,
    cap: usize,
    out: &'a mut Vec<Vec<Vertex>>,
}

impl ShortSearch<'_> {
    fn extend(&mut self, path: &mut Vec<Vertex>, on_path: &mut [bool], length: f64) -> Result<()> {
        let (s, t) = (path[0], *path.last().unwrap());
        let p = self.params;
        let ends_ok = (p.a.contains(s) && p.b.contains(t)) || (p.a.contains(t) && p.b.contains(s));
        if s <= t && ends_ok {
            let d = self.g.dist(s, t);
            if at_least(d, p.ell) && less_than(d, self.ell_second) && at_most(length, d + 1.0) {
                if self.out.len() >= self.cap {
                    return Err(Error::Capacity {
                        what: "short path collection",
                        limit: self.cap,
                        actual: self.out.len() + 1,
                    });
                }
                self.out.push(path.clone());
            }
        }
        for (w, len) in self.g.weighted_neighbors(t).collect::<Vec<_>>() {
            if on_path[w] || !at_most(length + len, self.limit) {
                continue;
            }
            on_path[w] = true;
            path.push(w);
            let res = self.extend(path, on_path, length + len);
            path.pop();
            on_path[w] = false;
            res?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::quasi::subdivide_each_edge;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn params(a: &[usize], b: &[usize], k: usize, r: f64, ell: f64) -> PullbackParams {
        PullbackParams {
            a: a.iter().copied().collect(),
            b: b.iter().copied().collect(),
            k,
            r,
            ell,
        }
    }

    #[test]
    fn identity_fattens_by_two() {
        let g = path(7);
        let q = QuasiIsometry::identity(7);
        let p = params(&[0], &[6], 2, 1.0, 0.0);
        let out = pullback_hitting_set(&g, &g, &q, &VertexSet::from([3]), &p, &Caps::default()).unwrap();
        assert_eq!(out.z2, VertexSet::from([3]));
        assert_eq!(out.z3, VertexSet::from([1, 2, 3, 4, 5]));
        // ℓ″ = 0, so nothing is short
        assert!(out.collection.is_empty());
        let fam = PathFamily::lxy(0.0, p.a.clone(), p.b.clone());
        assert!(hits_path_family(&g, &fam, &out.set));
    }

    #[test]
    fn subdivided_path_collects_the_unique_path() {
        let g = path(6);
        let (sub, q) = subdivide_each_edge(&g, 1).unwrap();
        let p = params(&[0], &[5], 2, 1.0, 0.0);
        // a subdivision vertex between 2 and 3
        let mid = (6..sub.vertex_count()).find(|&v| sub.has_edge(v, 2) && sub.has_edge(v, 3)).unwrap();
        let out = pullback_hitting_set(&g, &sub, &q, &VertexSet::from([mid]), &p, &Caps::default()).unwrap();
        assert_eq!(out.representatives, vec![(mid, 2)]);
        assert_eq!(out.ell_prime, 3.0);
        assert_eq!(out.ell_second, 8.0);
        assert_eq!(out.collection.len(), 1);
        assert_eq!(out.collection[0].sequence, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(out.set, g.all_vertices());
    }

    #[test]
    fn missed_target_path_is_a_precondition_failure() {
        let g = path(4);
        let q = QuasiIsometry::identity(4);
        let p = params(&[0], &[3], 2, 1.0, 0.0);
        let err = pullback_hitting_set(&g, &g, &q, &VertexSet::new(), &p, &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn far_packing_in_the_source_is_reported() {
        // two disjoint edges, each an A-B path, far apart
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let (sub, q) = subdivide_each_edge(&g, 1).unwrap();
        let p = params(&[0, 2], &[1, 3], 2, 1.0, 0.0);
        let z = VertexSet::from([0, 2]);
        let err = pullback_hitting_set(&g, &sub, &q, &z, &p, &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
