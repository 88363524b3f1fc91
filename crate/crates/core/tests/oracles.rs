use coarse_menger::covering::{gallai_check, min_ball_hitting, CoverInstance, GallaiVerdict, HitFamily};
use coarse_menger::packing::{gallai_packing, max_far_packing, menger_packing, PackingInstance, SolveMode};
use coarse_menger::tree::{tree_helly, HellyOutcome};
use coarse_menger::{Caps, Graph, PathFamily, VertexSet};
use proptest::prelude::*;

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

fn set_from_mask(n: usize, mask: u64) -> VertexSet {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

prop_compose! {
    fn small_graph(max_n: usize)(n in 2..=max_n)(n in Just(n), edges in any::<u64>(), x in 1u64..128, y in 1u64..128) -> (Graph, VertexSet, VertexSet) {
        let x = x & ((1 << n) - 1);
        let y = y & ((1 << n) - 1);
        let x = if x == 0 { 1 } else { x };
        let y = if y == 0 { 1 << (n - 1) } else { y };
        (graph_from_mask(n, edges), set_from_mask(n, x), set_from_mask(n, y))
    }
}

/// Vertices reachable from `from` without entering `blocked`.
fn reach(g: &Graph, from: &[usize], blocked: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack: Vec<usize> = from.iter().copied().filter(|&v| !blocked[v]).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !blocked[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn subsets_by_size(n: usize) -> Vec<u64> {
    let mut all: Vec<u64> = (0..1u64 << n).collect();
    all.sort_by_key(|m| (m.count_ones(), *m));
    all
}

fn blocked_mask(n: usize, m: u64) -> Vec<bool> {
    (0..n).map(|v| m >> v & 1 == 1).collect()
}

/// Smallest vertex set meeting every X-Y path, trivial ones included.
fn brute_separator(g: &Graph, x: &VertexSet, y: &VertexSet) -> usize {
    let n = g.vertex_count();
    for m in subsets_by_size(n) {
        let blocked = blocked_mask(n, m);
        let seen = reach(g, &x.to_vec(), &blocked);
        if !y.iter().any(|v| seen[v]) {
            return m.count_ones() as usize;
        }
    }
    unreachable!("the full vertex set separates")
}

fn a_separated(g: &Graph, a: &VertexSet, blocked: &[bool]) -> bool {
    a.iter().filter(|&v| !blocked[v]).all(|v| {
        let seen = reach(g, &[v], blocked);
        a.iter().all(|w| w == v || !seen[w])
    })
}

fn brute_a_hitting(g: &Graph, a: &VertexSet) -> usize {
    let n = g.vertex_count();
    subsets_by_size(n)
        .into_iter()
        .find(|&m| a_separated(g, a, &blocked_mask(n, m)))
        .map(|m| m.count_ones() as usize)
        .unwrap()
}

/// Simple paths between distinct vertices of `a` with interior outside `a`.
fn a_paths_through_interior(g: &Graph, a: &VertexSet) -> Vec<u64> {
    fn extend(g: &Graph, a: &VertexSet, path: &mut Vec<usize>, used: u64, out: &mut Vec<u64>) {
        let last = *path.last().unwrap();
        for w in g.neighbors(last) {
            if used >> w & 1 == 1 {
                continue;
            }
            if a.contains(w) {
                if w > path[0] {
                    out.push(used | 1 << w);
                }
            } else {
                path.push(w);
                extend(g, a, path, used | 1 << w, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in a.iter() {
        extend(g, a, &mut vec![s], 1 << s, &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn max_disjoint(masks: &[u64], used: u64) -> usize {
    match masks.split_first() {
        None => 0,
        Some((&first, rest)) => {
            let skip = max_disjoint(rest, used);
            if first & used == 0 {
                skip.max(1 + max_disjoint(rest, used | first))
            } else {
                skip
            }
        }
    }
}

fn cover(g: &Graph, family: PathFamily) -> usize {
    let inst = CoverInstance {
        host: g,
        family: HitFamily::Paths(family),
        radius: 0.0,
        mode: SolveMode::Exact,
    };
    min_ball_hitting(&inst, &Caps::default()).unwrap().count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn menger_agrees_with_brute_force((g, x, y) in small_graph(7)) {
        let flow = menger_packing(&g, &x, &y).unwrap();
        let separator = brute_separator(&g, &x, &y);
        prop_assert_eq!(flow, separator);
        let far = max_far_packing(&PackingInstance::lxy(&g, 0.0, x.clone(), y.clone(), 1.0, SolveMode::Exact), &Caps::default()).unwrap();
        prop_assert!(far.optimal);
        prop_assert_eq!(far.size, flow);
        prop_assert_eq!(cover(&g, PathFamily::lxy(0.0, x, y)), separator);
    }

    #[test]
    fn gallai_packing_and_hitting_match_brute_force((g, a, _) in small_graph(7), k in 1usize..4) {
        let oracle_packing = max_disjoint(&a_paths_through_interior(&g, &a), 0);
        let oracle_hitting = brute_a_hitting(&g, &a);
        prop_assert_eq!(gallai_packing(&g, &a, &Caps::default()).unwrap().count, oracle_packing);
        prop_assert_eq!(cover(&g, PathFamily::a_paths(a.clone())), oracle_hitting);
        match gallai_check(&g, &a, k, &Caps::default()).unwrap() {
            GallaiVerdict::Packing { paths } => {
                prop_assert_eq!(paths.len(), k);
                let sets: Vec<VertexSet> = paths.iter().map(|p| p.iter().copied().collect()).collect();
                for (i, p) in paths.iter().enumerate() {
                    prop_assert!(PathFamily::a_paths(a.clone()).contains(&g, p));
                    for q in &sets[i + 1..] {
                        prop_assert!(sets[i].is_disjoint(q));
                    }
                }
            }
            GallaiVerdict::Hitting { set } => {
                prop_assert!(oracle_packing < k);
                prop_assert!(set.len() <= 2 * k - 2);
                prop_assert!(a_separated(&g, &a, &set.to_mask(g.vertex_count())));
            }
        }
    }

    #[test]
    fn tree_helly_matches_exhaustive_search(
        parents in proptest::collection::vec(any::<prop::sample::Index>(), 1..8),
        seeds in proptest::collection::vec((any::<prop::sample::Index>(), 1usize..5, any::<u64>()), 1..7),
        k in 1usize..5,
    ) {
        let n = parents.len() + 1;
        let tree = Graph::new(n, parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1))).unwrap();
        // grow each subtree from a start vertex along random tree edges
        let subtrees: Vec<VertexSet> = seeds
            .iter()
            .map(|(start, size, noise)| {
                let mut set = VertexSet::singleton(start.index(n));
                let mut noise = *noise;
                while set.len() < *size {
                    let frontier: Vec<usize> = tree.open_neighborhood(&set).to_vec();
                    if frontier.is_empty() {
                        break;
                    }
                    set.insert(frontier[(noise % frontier.len() as u64) as usize]);
                    noise /= 7;
                }
                set
            })
            .collect();
        let masks: Vec<u64> = subtrees.iter().map(|s| s.iter().fold(0, |m, v| m | 1 << v)).collect();
        let packing = max_disjoint(&masks, 0);
        let hitting = subsets_by_size(n)
            .into_iter()
            .find(|h| masks.iter().all(|m| m & h != 0))
            .unwrap()
            .count_ones() as usize;
        prop_assert_eq!(packing, hitting);
        match tree_helly(&tree, &subtrees, k).unwrap() {
            HellyOutcome::Disjoint(chosen) => {
                prop_assert_eq!(chosen.len(), k);
                prop_assert!(packing >= k);
                for (i, &p) in chosen.iter().enumerate() {
                    for &q in &chosen[i + 1..] {
                        prop_assert!(subtrees[p].is_disjoint(&subtrees[q]));
                    }
                }
            }
            HellyOutcome::Hitting(h) => {
                prop_assert!(packing < k);
                prop_assert!(h.len() < k);
                prop_assert!(subtrees.iter().all(|s| s.intersects(&h)));
            }
        }
    }
}
