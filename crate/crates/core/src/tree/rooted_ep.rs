//! Packing and covering rooted fat minor models through a
//! tree-decomposition of the host.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::decomposition::TreeDecomposition;
use super::easy_tree::{
    easy_tree_hitting, easy_tree_hitting_with_oracle, EasyTreeOutcome, EasyTreeParams, ExchangeableFamily,
    MemberOracle,
};
use crate::caps::Caps;
use crate::covering::{min_ball_hitting, CoverInstance, HitFamily};
use crate::error::{Error, Result};
use crate::graph::{at_least, less_than, CenteredSet, Graph, Vertex, VertexSet};
use crate::packing::SolveMode;
use crate::paths::{check_fat_minor, model_distance, FatMinorModel};
use crate::separation::Location;

/// A pattern graph with one root set per pattern vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedPattern {
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
    pub roots: Vec<VertexSet>,
}

impl RootedPattern {
    pub fn new(order: usize, edges: Vec<(usize, usize)>, roots: Vec<VertexSet>) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("the pattern needs a vertex"));
        }
        if roots.len() != order {
            return Err(Error::invalid(format!("{} root sets for {order} pattern vertices", roots.len())));
        }
        let mut seen = HashSet::new();
        for &(u, v) in &edges {
            if u >= order || v >= order || u == v || !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(format!("bad pattern edge {u}-{v}")));
            }
        }
        if let Some(h) = roots.iter().position(VertexSet::is_empty) {
            return Err(Error::invalid(format!("pattern vertex {h} has an empty root set")));
        }
        Ok(RootedPattern { order, edges, roots })
    }

    pub fn k2(x: VertexSet, y: VertexSet) -> Result<Self> {
        RootedPattern::new(2, vec![(0, 1)], vec![x, y])
    }

    /// The path on three vertices, middle vertex 1.
    pub fn p3(first: VertexSet, middle: VertexSet, last: VertexSet) -> Result<Self> {
        RootedPattern::new(3, vec![(0, 1), (1, 2)], vec![first, middle, last])
    }

    fn degree(&self, h: usize) -> usize {
        self.edges.iter().filter(|&&(u, v)| u == h || v == h).count()
    }

    /// Pattern components as vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.order];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..self.order {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &(u, v) in &self.edges {
                    let y = if u == x { v } else if v == x { u } else { continue };
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    fn check_in(&self, g: &Graph) -> Result<()> {
        for r in &self.roots {
            g.check_set(r)?;
        }
        Ok(())
    }

    fn model(&self, branch_sets: Vec<VertexSet>, edge_paths: Vec<Vec<Vertex>>, ell: f64) -> FatMinorModel {
        FatMinorModel {
            pattern_order: self.order,
            pattern_edges: self.edges.clone(),
            branch_sets,
            edge_paths,
            fatness: ell,
            roots: Some(self.roots.clone()),
        }
    }
}

/// Rooted `ℓ`-fat models of the pattern, one for each inclusion-minimal
/// vertex union among the models searched.
///
/// The search is complete up to shrinking: every model contains, vertex by
/// vertex, one of the returned unions. Pattern vertices of degree at most
/// one get single-root branch sets (a longer branch set folds into the one
/// edge path), and edge paths touch their two branch sets only at their
/// ends. Hosts above the model cap are refused.
pub fn enumerate_rooted_models(g: &Graph, pattern: &RootedPattern, ell: f64, caps: &Caps) -> Result<Vec<FatMinorModel>> {
    pattern.check_in(g)?;
    check_fatness(ell)?;
    let n = g.vertex_count();
    if n > caps.model_vertices {
        return Err(Error::Capacity {
            what: "rooted model enumeration (vertices)",
            limit: caps.model_vertices,
            actual: n,
        });
    }
    let near: Vec<u32> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| less_than(g.dist(u, v), ell))
                .fold(0u32, |m, u| m | 1 << u)
        })
        .collect();
    let adjacency: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << u)).collect();
    let connected: Vec<u32> = (1u32..1 << n).filter(|&m| mask_connected(m, &adjacency)).collect();
    let candidates: Vec<Vec<u32>> = (0..pattern.order)
        .map(|h| {
            let roots = pattern.roots[h].iter().fold(0u32, |m, v| m | 1 << v);
            if pattern.degree(h) <= 1 {
                pattern.roots[h].iter().map(|v| 1u32 << v).collect()
            } else {
                connected.iter().copied().filter(|m| m & roots != 0).collect()
            }
        })
        .collect();
    let mut search = ModelSearch {
        pattern,
        n,
        near,
        adjacency,
        candidates,
        branch: Vec::new(),
        paths: Vec::new(),
        found: Vec::new(),
        seen: HashSet::new(),
        nodes: 0,
        node_limit: caps.search_nodes,
    };
    search.branch_sets()?;
    let mut found = search.found;
    found.sort_by_key(|(union, _, _)| (union.count_ones(), *union));
    let mut kept: Vec<(u32, Vec<u32>, Vec<Vec<Vertex>>)> = Vec::new();
    for entry in found {
        if !kept.iter().any(|(u, _, _)| u & entry.0 == *u) {
            kept.push(entry);
        }
    }
    Ok(kept
        .into_iter()
        .map(|(_, branch, paths)| {
            let sets = branch.iter().map(|&m| mask_to_set(m)).collect();
            pattern.model(sets, paths, ell)
        })
        .collect())
}

fn check_fatness(ell: f64) -> Result<()> {
    if ell.is_finite() && ell >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("fatness {ell} must be finite and nonnegative")))
    }
}

fn mask_connected(m: u32, adjacency: &[u32]) -> bool {
    let start = m & m.wrapping_neg();
    let mut reached = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adjacency[v] & m & !reached;
        reached |= fresh;
        frontier |= fresh;
    }
    reached == m
}

fn mask_to_set(m: u32) -> VertexSet {
    (0..32).filter(|&v| m >> v & 1 == 1).collect()
}

struct ModelSearch<'a> {
    pattern: &'a RootedPattern,
    n: usize,
    /// `near[v]`: vertices closer than ℓ to `v`.
    near: Vec<u32>,
    adjacency: Vec<u32>,
    candidates: Vec<Vec<u32>>,
    branch: Vec<u32>,
    paths: Vec<Vec<Vertex>>,
    found: Vec<(u32, Vec<u32>, Vec<Vec<Vertex>>)>,
    seen: HashSet<u32>,
    nodes: usize,
    node_limit: usize,
}

impl ModelSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Capacity {
                what: "rooted model search nodes",
                limit: self.node_limit,
                actual: self.nodes,
            });
        }
        Ok(())
    }

    fn near_mask(&self, m: u32) -> u32 {
        (0..self.n).filter(|&v| m >> v & 1 == 1).fold(0, |acc, v| acc | self.near[v])
    }

    fn branch_sets(&mut self) -> Result<()> {
        self.tick()?;
        let h = self.branch.len();
        if h == self.pattern.order {
            return self.edge_paths();
        }
        for i in 0..self.candidates[h].len() {
            let m = self.candidates[h][i];
            let ok = self.branch.iter().all(|&b| b & m == 0 && self.near_mask(b) & m == 0);
            if ok {
                self.branch.push(m);
                self.branch_sets()?;
                self.branch.pop();
            }
        }
        Ok(())
    }

    fn edge_paths(&mut self) -> Result<()> {
        self.tick()?;
        let e = self.paths.len();
        if e == self.pattern.edges.len() {
            let mut union = self.branch.iter().fold(0, |a, &b| a | b);
            for p in &self.paths {
                union |= p.iter().fold(0u32, |a, &v| a | 1 << v);
            }
            if self.seen.insert(union) {
                self.found.push((union, self.branch.clone(), self.paths.clone()));
            }
            return Ok(());
        }
        let (u, v) = self.pattern.edges[e];
        let (su, sv) = (self.branch[u], self.branch[v]);
        // vertices a path for this edge must avoid entirely
        let mut blocked = 0u32;
        for w in (0..self.pattern.order).filter(|&w| w != u && w != v) {
            blocked |= self.near_mask(self.branch[w]);
        }
        for p in &self.paths {
            blocked |= self.near_mask(p.iter().fold(0u32, |a, &x| a | 1 << x));
        }
        let starts: Vec<Vertex> = (0..self.n).filter(|&s| su >> s & 1 == 1 && blocked >> s & 1 == 0).collect();
        for s in starts {
            let mut path = vec![s];
            self.extend_path(&mut path, su | sv, sv, blocked)?;
        }
        Ok(())
    }

    fn extend_path(&mut self, path: &mut Vec<Vertex>, ends: u32, target: u32, blocked: u32) -> Result<()> {
        self.tick()?;
        let last = *path.last().expect("nonempty");
        let on_path = path.iter().fold(0u32, |a, &v| a | 1 << v);
        let next = self.adjacency[last] & !blocked & !on_path;
        for w in (0..self.n).filter(|&w| next >> w & 1 == 1) {
            if target >> w & 1 == 1 {
                path.push(w);
                self.paths.push(path.clone());
                self.edge_paths()?;
                self.paths.pop();
                path.pop();
            } else if ends >> w & 1 == 0 {
                path.push(w);
                self.extend_path(path, ends, target, blocked)?;
                path.pop();
            }
        }
        Ok(())
    }
}

/// Some rooted model of a connected pattern with zero fatness inside
/// `allowed`: a connected vertex set holding distinct roots for all pattern
/// vertices, shrunk until no vertex can go.
pub fn connected_model_within(g: &Graph, pattern: &RootedPattern, allowed: &VertexSet) -> Option<FatMinorModel> {
    for comp in g.components_within(allowed) {
        let Some(roots) = distinct_roots(pattern, &comp) else {
            continue;
        };
        let first = roots[0];
        let mut union = VertexSet::singleton(first);
        for &r in &roots[1..] {
            union.extend(shortest_path(g, &comp, first, r).expect("same component"));
        }
        let fixed: VertexSet = roots.iter().copied().collect();
        let mut changed = true;
        while changed {
            changed = false;
            for v in union.to_vec().into_iter().rev() {
                if fixed.contains(v) {
                    continue;
                }
                let mut smaller = union.clone();
                smaller.remove(v);
                if g.induces_connected(&smaller) {
                    union = smaller;
                    changed = true;
                }
            }
        }
        let branch_sets = roots.iter().map(|&r| VertexSet::singleton(r)).collect();
        let edge_paths = pattern
            .edges
            .iter()
            .map(|&(u, v)| shortest_path(g, &union, roots[u], roots[v]).expect("connected union"))
            .collect();
        return Some(pattern.model(branch_sets, edge_paths, 0.0));
    }
    None
}

/// Two vertex-disjoint rooted models of a connected pattern with zero
/// fatness, or `None` once the search is exhausted.
///
/// Connected sets `S` are grown from their smallest vertex `v`, each
/// visited once. A branch is cut as soon as the vertices above `v` outside
/// `S` hold no model, since growing `S` cannot bring one back; the model
/// with the smaller minimum vertex is the one grown, so the search is
/// complete. Counts visited sets against `caps.search_nodes`.
pub fn disjoint_model_pair(
    g: &Graph,
    pattern: &RootedPattern,
    caps: &Caps,
) -> Result<Option<(FatMinorModel, FatMinorModel)>> {
    pattern.check_in(g)?;
    if !pattern.is_connected() {
        return Err(Error::invalid("disjoint model search needs a connected pattern"));
    }
    if connected_model_within(g, pattern, &g.all_vertices()).is_none() {
        return Ok(None);
    }
    let mut search = PairSearch {
        g,
        pattern,
        nodes: 0,
        limit: caps.search_nodes,
    };
    for root in g.vertices() {
        let mut set = VertexSet::singleton(root);
        let ext: Vec<Vertex> = g.neighbors(root).filter(|&u| u > root).collect();
        if let Some((first, rest)) = search.extend(root, &mut set, ext)? {
            let a = connected_model_within(g, pattern, &first).expect("checked during search");
            let b = connected_model_within(g, pattern, &rest).expect("checked during search");
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

struct PairSearch<'a> {
    g: &'a Graph,
    pattern: &'a RootedPattern,
    nodes: usize,
    limit: usize,
}

impl PairSearch<'_> {
    fn extend(&mut self, root: Vertex, set: &mut VertexSet, ext: Vec<Vertex>) -> Result<Option<(VertexSet, VertexSet)>> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Capacity {
                what: "disjoint model search (nodes)",
                limit: self.limit,
                actual: self.nodes,
            });
        }
        let rest: VertexSet = (root + 1..self.g.vertex_count()).filter(|&u| !set.contains(u)).collect();
        if connected_model_within(self.g, self.pattern, &rest).is_none() {
            return Ok(None);
        }
        if connected_model_within(self.g, self.pattern, set).is_some() {
            return Ok(Some((set.clone(), rest)));
        }
        let mut closed = set.clone();
        for v in set.iter() {
            closed.extend(self.g.neighbors(v));
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for u in self.g.neighbors(w) {
                if u > root && !closed.contains(u) && !next.contains(&u) {
                    next.push(u);
                }
            }
            set.insert(w);
            let found = self.extend(root, set, next)?;
            set.remove(w);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// A system of distinct representatives of the root sets inside `within`.
fn distinct_roots(pattern: &RootedPattern, within: &VertexSet) -> Option<Vec<Vertex>> {
    let options: Vec<Vec<Vertex>> = pattern.roots.iter().map(|r| r.intersection(within).to_vec()).collect();
    let mut owner: std::collections::HashMap<Vertex, usize> = std::collections::HashMap::new();
    fn augment(
        h: usize,
        options: &[Vec<Vertex>],
        owner: &mut std::collections::HashMap<Vertex, usize>,
        visited: &mut HashSet<Vertex>,
    ) -> bool {
        for &v in &options[h] {
            if !visited.insert(v) {
                continue;
            }
            let free = match owner.get(&v) {
                None => true,
                Some(&other) => augment(other, options, owner, visited),
            };
            if free {
                owner.insert(v, h);
                return true;
            }
        }
        false
    }
    for h in 0..pattern.order {
        if !augment(h, &options, &mut owner, &mut HashSet::new()) {
            return None;
        }
    }
    let mut roots = vec![0; pattern.order];
    for (v, h) in owner {
        roots[h] = v;
    }
    Some(roots)
}

/// Fewest hops from `s` to `t` inside `within`, lexicographically first
/// among shortest.
fn shortest_path(g: &Graph, within: &VertexSet, s: Vertex, t: Vertex) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[t] = 0;
    let mut queue = VecDeque::from([t]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if within.contains(w) && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist[s] == usize::MAX {
        return None;
    }
    let mut path = vec![s];
    let mut v = s;
    while v != t {
        v = g
            .neighbors(v)
            .find(|&w| within.contains(w) && dist[w] + 1 == dist[v])
            .expect("distances lead to t");
        path.push(v);
    }
    Some(path)
}

/// Rooted models of a connected pattern with zero fatness, as an oracle.
pub struct ConnectedModelOracle<'a> {
    pub host: &'a Graph,
    pub pattern: &'a RootedPattern,
}

impl MemberOracle for ConnectedModelOracle<'_> {
    fn member_within(&self, allowed: &VertexSet) -> Result<Option<Vec<VertexSet>>> {
        Ok(connected_model_within(self.host, self.pattern, allowed).map(|m| vec![m.vertex_union()]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelRoute {
    /// Models listed exhaustively.
    Enumerated,
    /// Zero fatness, connected pattern: models found on demand.
    ConnectedOracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum RootedEpOutcome {
    /// `k` validated models pairwise at distance at least `r`.
    Packing { models: Vec<FatMinorModel> },
    /// A centered set meeting every model.
    Hitting { set: CenteredSet },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootedEpReport {
    pub outcome: RootedEpOutcome,
    pub route: ModelRoute,
    /// Largest bag of the decomposition used.
    pub bag_bound: usize,
    /// The thickening handed to the tree lemma: `max(⌈(r−1)/2⌉ − ℓ/2, 0)`.
    pub reduced_r: f64,
    pub hitting_budget: usize,
    /// `max(⌈(r−1)/2⌉, ℓ/2)`.
    pub hitting_radius: f64,
}

/// Either `k` rooted `ℓ`-fat models pairwise at distance at least `r`, or
/// a set centered at few balls of radius `max(⌈(r−1)/2⌉, ℓ/2)` meeting all
/// of them.
///
/// Each model is thickened to its `(ℓ/2 − 0.1)`-neighbourhood, one
/// component per pattern component, and the tree lemma runs on those with
/// threshold `max(⌈(r−1)/2⌉ − ℓ/2, 0)`, bags `(w, 0)`-centered for `w` the
/// largest bag. Zero fatness keeps the models unthickened and needs a
/// connected pattern.
pub fn rooted_fat_minor_ep(
    g: &Graph,
    td: &TreeDecomposition,
    pattern: &RootedPattern,
    k: usize,
    r: f64,
    ell: f64,
    caps: &Caps,
) -> Result<RootedEpReport> {
    pattern.check_in(g)?;
    check_fatness(ell)?;
    if ell.fract() != 0.0 || !(r.is_finite() && r >= 1.0 && r.fract() == 0.0) {
        return Err(Error::invalid("r must be a positive integer and ℓ a nonnegative integer"));
    }
    if ell == 0.0 && !pattern.is_connected() {
        return Err(Error::invalid("zero fatness needs a connected pattern"));
    }
    let all = g.all_vertices();
    td.validate(g, &all)?;
    let half_up = ((r - 1.0) / 2.0).ceil();
    let reduced_r = (half_up - ell / 2.0).max(0.0);
    let thicken = (ell / 2.0 - 0.1).max(0.0);
    let bag_bound = td.max_bag_size();
    let params = EasyTreeParams {
        r: reduced_r,
        k,
        xi: bag_bound,
        eta: 0.0,
    };
    let components = pattern.components();
    let c = components.len();
    let hitting_budget = (c * k).saturating_sub(1) * bag_bound;
    let hitting_radius = half_up.max(ell / 2.0);
    let loc = Location::trivial(&all);
    let (outcome, route) = if g.vertex_count() <= caps.model_vertices {
        let models = enumerate_rooted_models(g, pattern, ell, caps)?;
        let members: Vec<Vec<VertexSet>> = models
            .iter()
            .map(|m| components.iter().map(|comp| g.ball(&piece(m, comp), thicken)).collect())
            .collect();
        let fam = ExchangeableFamily::new(c, members)?;
        let outcome = match easy_tree_hitting(g, &all, &fam, &loc, td, &params, caps)? {
            EasyTreeOutcome::Packing { members } => {
                let models = members
                    .iter()
                    .map(|p| recombine(pattern, &models, &components, &p.sources, ell))
                    .collect();
                RootedEpOutcome::Packing { models }
            }
            EasyTreeOutcome::Hitting { set, .. } => {
                let set = widen(g, set, ell, reduced_r);
                if let Some(i) = models.iter().position(|m| !m.vertex_union().intersects(&set.members)) {
                    return Err(Error::InternalInconsistency(format!("hitting set misses model {i}")));
                }
                RootedEpOutcome::Hitting { set }
            }
        };
        (outcome, ModelRoute::Enumerated)
    } else if ell == 0.0 {
        let oracle = ConnectedModelOracle { host: g, pattern };
        let outcome = match easy_tree_hitting_with_oracle(g, &all, &oracle, &loc, td, &params, caps)? {
            EasyTreeOutcome::Packing { members } => {
                let models = members
                    .iter()
                    .map(|p| connected_model_within(g, pattern, &p.vertices()).expect("witness holds a model"))
                    .collect();
                RootedEpOutcome::Packing { models }
            }
            EasyTreeOutcome::Hitting { set, .. } => {
                if connected_model_within(g, pattern, &all.difference(&set.members)).is_some() {
                    return Err(Error::InternalInconsistency("hitting set misses a model".into()));
                }
                RootedEpOutcome::Hitting { set }
            }
        };
        (outcome, ModelRoute::ConnectedOracle)
    } else {
        return Err(Error::Capacity {
            what: "rooted model enumeration (vertices)",
            limit: caps.model_vertices,
            actual: g.vertex_count(),
        });
    };
    match &outcome {
        RootedEpOutcome::Packing { models } => {
            for (i, m) in models.iter().enumerate() {
                let report = check_fat_minor(g, m)?;
                if !report.valid {
                    return Err(Error::InternalInconsistency(format!(
                        "packed model {i} is not a rooted fat model: {:?}",
                        report.violations
                    )));
                }
                for other in &models[i + 1..] {
                    if !at_least(model_distance(g, m, other)?, r) {
                        return Err(Error::InternalInconsistency("packed models are closer than r".into()));
                    }
                }
            }
        }
        RootedEpOutcome::Hitting { set } => {
            if !set.holds_in(g) || !set.within_budget(hitting_budget, hitting_radius) {
                return Err(Error::InternalInconsistency("hitting set exceeds its budget".into()));
            }
        }
    }
    Ok(RootedEpReport {
        outcome,
        route,
        bag_bound,
        reduced_r,
        hitting_budget,
        hitting_radius,
    })
}

/// Vertices of the branch sets and edge paths of one pattern component.
fn piece(m: &FatMinorModel, comp: &[usize]) -> VertexSet {
    let mut out = VertexSet::new();
    for &h in comp {
        out.extend(m.branch_sets[h].iter());
    }
    for (i, &(u, _)) in m.pattern_edges.iter().enumerate() {
        if comp.contains(&u) {
            out.extend(m.edge_paths[i].iter().copied());
        }
    }
    out
}

/// Pattern component `a` taken from model `sources[a]`.
fn recombine(
    pattern: &RootedPattern,
    models: &[FatMinorModel],
    components: &[Vec<usize>],
    sources: &[usize],
    ell: f64,
) -> FatMinorModel {
    let mut owner = vec![0; pattern.order];
    for (a, comp) in components.iter().enumerate() {
        for &h in comp {
            owner[h] = sources[a];
        }
    }
    let branch_sets = (0..pattern.order).map(|h| models[owner[h]].branch_sets[h].clone()).collect();
    let edge_paths = pattern
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(u, _))| models[owner[u]].edge_paths[i].clone())
        .collect();
    pattern.model(branch_sets, edge_paths, ell)
}

/// A ball of radius `ρ` meeting the `(ℓ/2 − 0.1)`-thickening of a model
/// has its center within `ρ + ℓ/2` of the model itself.
fn widen(g: &Graph, set: CenteredSet, ell: f64, reduced_r: f64) -> CenteredSet {
    if ell == 0.0 {
        return set;
    }
    CenteredSet {
        members: g.ball(&set.members, ell / 2.0),
        centers: set.centers,
        radius: reduced_r + ell / 2.0,
    }
}

/// Fewest vertices meeting every rooted `ℓ`-fat model of the pattern.
///
/// Exact set cover over the enumerated models on small hosts; for zero
/// fatness and a connected pattern on larger hosts, iterative deepening
/// that branches on the vertices of a model surviving the current choice.
pub fn min_model_hitting_set(g: &Graph, pattern: &RootedPattern, ell: f64, caps: &Caps) -> Result<VertexSet> {
    pattern.check_in(g)?;
    check_fatness(ell)?;
    if g.vertex_count() <= caps.model_vertices {
        let models = enumerate_rooted_models(g, pattern, ell, caps)?;
        let inst = CoverInstance {
            host: g,
            family: HitFamily::Explicit(models.iter().map(FatMinorModel::vertex_union).collect()),
            radius: 0.0,
            mode: SolveMode::Exact,
        };
        return Ok(min_ball_hitting(&inst, caps)?.centered.centers);
    }
    if ell != 0.0 || !pattern.is_connected() {
        return Err(Error::Capacity {
            what: "rooted model enumeration (vertices)",
            limit: caps.model_vertices,
            actual: g.vertex_count(),
        });
    }
    let mut search = HittingSearch {
        g,
        pattern,
        allowed: g.all_vertices(),
        excluded: vec![false; g.vertex_count()],
        chosen: Vec::new(),
        nodes: 0,
        node_limit: caps.search_nodes,
    };
    for budget in 0..=g.vertex_count() {
        if search.run(budget)? {
            return Ok(search.chosen.into_iter().collect());
        }
    }
    Err(Error::InternalInconsistency("deleting every vertex leaves a model".into()))
}

struct HittingSearch<'a> {
    g: &'a Graph,
    pattern: &'a RootedPattern,
    allowed: VertexSet,
    excluded: Vec<bool>,
    chosen: Vec<Vertex>,
    nodes: usize,
    node_limit: usize,
}

impl HittingSearch<'_> {
    fn run(&mut self, budget: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Capacity {
                what: "model hitting search nodes",
                limit: self.node_limit,
                actual: self.nodes,
            });
        }
        let Some(model) = connected_model_within(self.g, self.pattern, &self.allowed) else {
            return Ok(true);
        };
        if budget == 0 {
            return Ok(false);
        }
        let options: Vec<Vertex> = model.vertex_union().iter().filter(|&v| !self.excluded[v]).collect();
        let mut newly_excluded = Vec::new();
        let mut result = Ok(false);
        for v in options {
            self.allowed.remove(v);
            self.chosen.push(v);
            let res = self.run(budget - 1);
            if matches!(res, Ok(true)) {
                result = res;
                break;
            }
            self.chosen.pop();
            self.allowed.insert(v);
            if res.is_err() {
                result = res;
                break;
            }
            self.excluded[v] = true;
            newly_excluded.push(v);
        }
        for v in newly_excluded {
            self.excluded[v] = false;
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::duality_sweep;
    use crate::paths::PathFamily;

    fn grid(rows: usize, cols: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                let v = i * cols + j;
                if j + 1 < cols {
                    edges.push((v, v + 1));
                }
                if i + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::new(rows * cols, edges).unwrap()
    }

    fn p3_roots(w: usize) -> RootedPattern {
        let first_col = (0..w).map(|i| i * w).collect();
        let first_row = (0..w).collect();
        let last_col = (0..w).map(|i| i * w + w - 1).collect();
        RootedPattern::p3(first_col, first_row, last_col).unwrap()
    }

    #[test]
    fn bad_patterns_are_rejected() {
        assert!(RootedPattern::new(2, vec![(0, 0)], vec![VertexSet::from([0]); 2]).is_err());
        assert!(RootedPattern::new(2, vec![(0, 1)], vec![VertexSet::from([0])]).is_err());
        assert!(RootedPattern::new(2, vec![(0, 1)], vec![VertexSet::from([0]), VertexSet::new()]).is_err());
    }

    #[test]
    fn k2_models_are_paths() {
        let g = grid(2, 4);
        let x = VertexSet::from([0, 4]);
        let y = VertexSet::from([3, 7]);
        let pattern = RootedPattern::k2(x.clone(), y.clone()).unwrap();
        let caps = Caps::default();
        let models = enumerate_rooted_models(&g, &pattern, 0.0, &caps).unwrap();
        for m in &models {
            assert!(check_fat_minor(&g, m).unwrap().valid);
        }
        // the minimal unions are exactly the vertex sets of chordless X-Y
        // paths with no inner X or Y vertex
        assert!(models.iter().any(|m| m.vertex_union() == VertexSet::from([0, 1, 2, 3])));
        let td = TreeDecomposition::min_degree(&g, &g.all_vertices()).unwrap();
        let sweep = duality_sweep(&g, &PathFamily::lxy(0.0, x, y), &[1.0], &[0.0], SolveMode::Exact, &caps).unwrap();
        let hit = min_model_hitting_set(&g, &pattern, 0.0, &caps).unwrap();
        assert_eq!(hit.len(), sweep.cover_by_radius[0].balls);
        // the two rows cross every bag, so the lemma answers with one bag
        let report = rooted_fat_minor_ep(&g, &td, &pattern, 2, 1.0, 0.0, &caps).unwrap();
        let RootedEpOutcome::Hitting { set } = &report.outcome else { panic!() };
        assert!(set.center_count() >= sweep.cover_by_radius[0].balls);
        assert_eq!(sweep.packing_by_r[0].size, 2);
    }

    #[test]
    fn separate_paths_are_packed() {
        let g = Graph::new(10, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (8, 9)]).unwrap();
        let pattern = RootedPattern::k2(VertexSet::from([0, 5]), VertexSet::from([4, 9])).unwrap();
        let td = TreeDecomposition::min_degree(&g, &g.all_vertices()).unwrap();
        let report = rooted_fat_minor_ep(&g, &td, &pattern, 2, 1.0, 0.0, &Caps::default()).unwrap();
        let RootedEpOutcome::Packing { models } = &report.outcome else { panic!() };
        assert_eq!(models.len(), 2);
        assert_eq!(models[0].vertex_union(), VertexSet::from([0, 1, 2, 3, 4]));
    }

    #[test]
    fn p3_grid_has_no_two_disjoint_models() {
        let caps = Caps::default();
        for w in [3, 4] {
            let g = grid(w, w);
            let pattern = p3_roots(w);
            let td = TreeDecomposition::min_degree(&g, &g.all_vertices()).unwrap();
            let report = rooted_fat_minor_ep(&g, &td, &pattern, 2, 1.0, 0.0, &caps).unwrap();
            assert!(matches!(report.outcome, RootedEpOutcome::Hitting { .. }), "w = {w}");
        }
    }

    #[test]
    fn disjoint_pair_search_matches_enumeration() {
        let caps = Caps::default();
        for w in [3, 4] {
            let g = grid(w, w);
            assert!(disjoint_model_pair(&g, &p3_roots(w), &caps).unwrap().is_none());
        }
        // two separate rows, each holding all three root sets
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let pattern = RootedPattern::p3(VertexSet::from([0, 3]), VertexSet::from([1, 4]), VertexSet::from([2, 5])).unwrap();
        let (a, b) = disjoint_model_pair(&g, &pattern, &caps).unwrap().unwrap();
        assert!(a.vertex_union().is_disjoint(&b.vertex_union()));
        let models = enumerate_rooted_models(&g, &pattern, 0.0, &caps).unwrap();
        let pairs = models.iter().any(|x| models.iter().any(|y| x.vertex_union().is_disjoint(&y.vertex_union())));
        assert!(pairs);
    }

    #[test]
    fn enumerated_and_oracle_routes_agree() {
        let g = grid(3, 3);
        let pattern = p3_roots(3);
        let td = TreeDecomposition::min_degree(&g, &g.all_vertices()).unwrap();
        let caps = Caps::default();
        let listed = rooted_fat_minor_ep(&g, &td, &pattern, 2, 1.0, 0.0, &caps).unwrap();
        let tiny = Caps {
            model_vertices: 4,
            ..caps
        };
        let implicit = rooted_fat_minor_ep(&g, &td, &pattern, 2, 1.0, 0.0, &tiny).unwrap();
        assert_eq!(listed.route, ModelRoute::Enumerated);
        assert_eq!(implicit.route, ModelRoute::ConnectedOracle);
        assert_eq!(listed.outcome, implicit.outcome);
        assert_eq!(
            min_model_hitting_set(&g, &pattern, 0.0, &caps).unwrap().len(),
            min_model_hitting_set(&g, &pattern, 0.0, &tiny).unwrap().len()
        );
    }

    #[test]
    fn fat_models_keep_their_distance() {
        let g = grid(3, 3);
        let pattern = p3_roots(3);
        let caps = Caps::default();
        for m in enumerate_rooted_models(&g, &pattern, 1.0, &caps).unwrap() {
            assert!(check_fat_minor(&g, &m).unwrap().valid);
        }
        let td = TreeDecomposition::min_degree(&g, &g.all_vertices()).unwrap();
        let report = rooted_fat_minor_ep(&g, &td, &pattern, 2, 1.0, 1.0, &caps).unwrap();
        assert!(matches!(report.outcome, RootedEpOutcome::Hitting { .. }));
        assert_eq!(report.hitting_radius, 0.5);
    }
}
