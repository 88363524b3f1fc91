//! The acceptance suite: twelve criteria run on fixed seeds, each checked
//! against an oracle that does not share code with the solver under test.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use coarse_menger::covering::{
    duality_sweep, gallai_check, min_ball_hitting, weak_duality_violations, CellStatus, CoverInstance, GallaiVerdict,
    HitFamily,
};
use coarse_menger::generators::{
    menger_lower_bound_instance, random_easy_tree_instances, random_helly_instances, random_instances,
    random_tangle_instances, rooted_p3_grid, verify_annotations, RandomConfig, RandomFamily,
};
use coarse_menger::packing::{max_far_packing, menger_packing, PackingInstance, SolveMode};
use coarse_menger::tangle::{check_outcome, tangle_trichotomy, verify_tangle, TrichotomyOutcome};
use coarse_menger::transfer::{
    pullback_hitting_set, scale_metric, subdivide_each_edge, transfer_constants, transfer_intermediates,
    transfer_witness, PullbackParams, TransferIntermediates, WitnessVariant,
};
use coarse_menger::tree::{
    disjoint_model_pair, easy_tree_hitting, min_model_hitting_set, rooted_fat_minor_ep, tree_helly, EasyTreeOutcome,
    HellyOutcome, RootedEpOutcome,
};
use coarse_menger::{
    certify_centered, Caps, Certification, Error, Graph, InstanceSpec, Location, PathFamily, SearchMode,
    TreeDecomposition, VertexSet, WitnessFunctions,
};
use serde::{Deserialize, Serialize};

use crate::report::canonical_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Menger = 1,
    Gallai,
    GridLowerBound,
    WeakDuality,
    TreeHelly,
    EasyTree,
    RootedGrid,
    Constants,
    Pullback,
    Scaling,
    Tangle,
    Determinism,
}

impl Criterion {
    pub const ALL: [Criterion; 12] = [
        Criterion::Menger,
        Criterion::Gallai,
        Criterion::GridLowerBound,
        Criterion::WeakDuality,
        Criterion::TreeHelly,
        Criterion::EasyTree,
        Criterion::RootedGrid,
        Criterion::Constants,
        Criterion::Pullback,
        Criterion::Scaling,
        Criterion::Tangle,
        Criterion::Determinism,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Menger => "menger",
            Criterion::Gallai => "gallai",
            Criterion::GridLowerBound => "grid-lower-bound",
            Criterion::WeakDuality => "weak-duality",
            Criterion::TreeHelly => "tree-helly",
            Criterion::EasyTree => "easy-tree",
            Criterion::RootedGrid => "rooted-grid",
            Criterion::Constants => "constants",
            Criterion::Pullback => "pullback",
            Criterion::Scaling => "scaling",
            Criterion::Tangle => "tangle",
            Criterion::Determinism => "determinism",
        }
    }

    /// Wall-clock allowance; `None` where only correctness is asked for.
    pub fn budget(self) -> Option<Duration> {
        let secs = match self {
            Criterion::Menger | Criterion::TreeHelly | Criterion::Scaling => 60,
            Criterion::Gallai | Criterion::GridLowerBound | Criterion::Pullback => 120,
            Criterion::EasyTree => 180,
            Criterion::RootedGrid | Criterion::Tangle => 300,
            Criterion::Constants => 1,
            Criterion::WeakDuality | Criterion::Determinism => return None,
        };
        Some(Duration::from_secs(secs))
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = String;

    /// A name such as `menger` or a number from 1 to 12.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s || s.parse::<u8>().ok() == Some(c.id()))
            .ok_or_else(|| {
                let names: Vec<&str> = Criterion::ALL.iter().map(|c| c.name()).collect();
                format!("unknown criterion `{s}`; expected 1-12 or one of {}", names.join(", "))
            })
    }
}

/// Deliberate solver mutations, to show the suite catches them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Reports one more far path than the packing solver found.
    PackingOffByOne,
    /// Drops the smallest vertex from every A-path hitting set.
    DropHittingVertex,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "packing-off-by-one" => Ok(Fault::PackingOffByOne),
            "drop-hitting-vertex" => Ok(Fault::DropHittingVertex),
            other => Err(format!(
                "unknown fault `{other}`; expected packing-off-by-one or drop-hitting-vertex"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceConfig {
    pub seed: u64,
    /// Criteria to run; empty means all.
    pub only: Vec<Criterion>,
    pub fault: Option<Fault>,
    pub caps: Caps,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig {
            seed: 1,
            only: Vec::new(),
            fault: None,
            caps: Caps::default(),
        }
    }
}

impl AcceptanceConfig {
    fn selected(&self) -> Vec<Criterion> {
        if self.only.is_empty() {
            Criterion::ALL.to_vec()
        } else {
            let mut v = self.only.clone();
            v.sort();
            v.dedup();
            v
        }
    }

    /// Per-criterion seed, so that running a subset sees the same instances.
    fn seed_for(&self, c: Criterion) -> u64 {
        self.seed ^ (c.id() as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    /// Instances or cells checked.
    pub checked: usize,
    pub summary: String,
    /// The first few failures; `failure_count` has the total.
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl Verdict {
    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("[{mark}] {:>2} {:<17} {}", self.id, self.name, self.summary);
        if let Some(first) = self.failures.first() {
            s.push_str(&format!(" | {} failure(s), first: {first}", self.failure_count));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceReport {
    pub verdicts: Vec<Verdict>,
    /// Wall-clock per criterion; excluded from canonical comparison.
    pub timing_ms: BTreeMap<String, u64>,
}

impl AcceptanceReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, c: Criterion) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.id == c.id())
    }
}

const KEPT_FAILURES: usize = 5;

/// Collects one criterion's checks.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
    failure_count: usize,
    notes: Vec<String>,
}

impl Tally {
    fn fail(&mut self, msg: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg.into());
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }
}

pub fn run_acceptance(config: &AcceptanceConfig) -> AcceptanceReport {
    let selected = config.selected();
    let mut verdicts = Vec::new();
    let mut timing_ms = BTreeMap::new();
    let plain: Vec<Criterion> = selected.iter().copied().filter(|&c| c != Criterion::Determinism).collect();
    for &c in &plain {
        let (v, ms) = timed(c, || evaluate(c, config));
        timing_ms.insert(c.name().to_string(), ms);
        verdicts.push(v);
    }
    if selected.contains(&Criterion::Determinism) {
        let (v, ms) = timed(Criterion::Determinism, || determinism(config, &plain, &verdicts));
        timing_ms.insert(Criterion::Determinism.name().to_string(), ms);
        verdicts.push(v);
    }
    AcceptanceReport { verdicts, timing_ms }
}

fn timed(c: Criterion, run: impl FnOnce() -> Result<Tally, Error>) -> (Verdict, u64) {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let mut tally = outcome.unwrap_or_else(|e| {
        let mut t = Tally::default();
        t.fail(format!("aborted: {e}"));
        t
    });
    if let Some(budget) = c.budget() {
        if elapsed > budget {
            tally.fail(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), budget.as_secs()));
        }
    }
    let verdict = Verdict {
        id: c.id(),
        name: c.name().to_string(),
        passed: tally.failure_count == 0,
        checked: tally.checked,
        summary: tally.notes.join("; "),
        failures: tally.failures,
        failure_count: tally.failure_count,
    };
    (verdict, elapsed.as_millis() as u64)
}

fn evaluate(c: Criterion, config: &AcceptanceConfig) -> Result<Tally, Error> {
    let seed = config.seed_for(c);
    let caps = &config.caps;
    match c {
        Criterion::Menger => menger(seed, config.fault, caps),
        Criterion::Gallai => gallai(seed, config.fault, caps),
        Criterion::GridLowerBound => grid_lower_bound(caps),
        Criterion::WeakDuality => weak_duality(seed, caps),
        Criterion::TreeHelly => helly(seed),
        Criterion::EasyTree => easy_tree(seed, caps),
        Criterion::RootedGrid => rooted_grid(caps),
        Criterion::Constants => constants(),
        Criterion::Pullback => pullback(seed, caps),
        Criterion::Scaling => scaling(seed, caps),
        Criterion::Tangle => tangle(seed, caps),
        Criterion::Determinism => unreachable!("handled by run_acceptance"),
    }
}

/// Reruns the other selected criteria (all of them when none is selected)
/// and compares canonical verdicts.
fn determinism(config: &AcceptanceConfig, plain: &[Criterion], first: &[Verdict]) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let rerun_all = plain.is_empty();
    let targets: Vec<Criterion> = if rerun_all {
        Criterion::ALL[..11].to_vec()
    } else {
        plain.to_vec()
    };
    let baseline: Vec<Verdict> = if rerun_all {
        targets.iter().map(|&c| timed(c, || evaluate(c, config)).0).collect()
    } else {
        first.to_vec()
    };
    for (c, before) in targets.iter().zip(&baseline) {
        let again = timed(*c, || evaluate(*c, config)).0;
        t.checked += 1;
        let same = canonical_json(&serde_json::to_value(before).expect("serializable"))
            == canonical_json(&serde_json::to_value(&again).expect("serializable"));
        t.check(same, || format!("criterion {} differs between runs", c.name()));
    }
    t.note(format!("{} criteria rerun, canonical verdicts compared", t.checked));
    Ok(t)
}

fn connected_graphs(seed: u64, count: usize, min: usize, max: usize, weighted: bool) -> Result<Vec<InstanceSpec>, Error> {
    random_instances(
        seed,
        count,
        &RandomConfig {
            family: RandomFamily::General {
                edge_probability: 0.3,
                connected: true,
            },
            min_vertices: min,
            max_vertices: max,
            weighted,
        },
    )
}

fn xy(spec: &InstanceSpec) -> (VertexSet, VertexSet) {
    (
        spec.x.clone().expect("random instances carry X"),
        spec.y.clone().expect("random instances carry Y"),
    )
}

fn cover(g: &Graph, family: PathFamily, radius: f64, mode: SolveMode, caps: &Caps) -> Result<coarse_menger::covering::CoverSolution, Error> {
    min_ball_hitting(
        &CoverInstance {
            host: g,
            family: HitFamily::Paths(family),
            radius,
            mode,
        },
        caps,
    )
}

fn menger(seed: u64, fault: Option<Fault>, caps: &Caps) -> Result<Tally, Error> {
    let mut t = Tally::default();
    for (i, spec) in connected_graphs(seed, 200, 2, 12, false)?.iter().enumerate() {
        let g = &spec.graph;
        let (x, y) = xy(spec);
        let packing = max_far_packing(&PackingInstance::lxy(g, 0.0, x.clone(), y.clone(), 1.0, SolveMode::Exact), caps)?;
        let mut size = packing.size;
        if fault == Some(Fault::PackingOffByOne) {
            size += 1;
        }
        let cov = cover(g, PathFamily::lxy(0.0, x.clone(), y.clone()), 0.0, SolveMode::Exact, caps)?;
        let flow = menger_packing(g, &x, &y)?;
        t.checked += 1;
        t.check(packing.optimal && cov.optimal, || format!("instance {i}: not certified optimal"));
        t.check(size == cov.count && size == flow, || {
            format!("instance {i}: packing {size}, cover {}, max-flow {flow}", cov.count)
        });
    }
    t.note(format!("{} graphs, packing = cover = max-flow", t.checked));
    Ok(t)
}

/// Whether no component of `g − z` holds two vertices of `a` outside `z`.
fn separates_a(g: &Graph, a: &VertexSet, z: &VertexSet) -> bool {
    let rest = g.all_vertices().difference(z);
    g.components_within(&rest)
        .iter()
        .all(|c| c.intersection(a).len() <= 1)
}

fn is_a_path(g: &Graph, a: &VertexSet, p: &[usize]) -> bool {
    let distinct: VertexSet = p.iter().copied().collect();
    p.len() >= 2
        && distinct.len() == p.len()
        && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && a.contains(p[0])
        && a.contains(p[p.len() - 1])
}

fn gallai(seed: u64, fault: Option<Fault>, caps: &Caps) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let mut branches = [0usize; 2];
    let specs = random_instances(
        seed,
        100,
        &RandomConfig {
            family: RandomFamily::General {
                edge_probability: 0.25,
                connected: false,
            },
            min_vertices: 2,
            max_vertices: 12,
            weighted: false,
        },
    )?;
    for (i, spec) in specs.iter().enumerate() {
        let g = &spec.graph;
        let (x, y) = xy(spec);
        let a = x.union(&y).union(spec.a.as_ref().expect("random instances carry A"));
        let k = 1 + i % 3;
        t.checked += 1;
        match gallai_check(g, &a, k, caps)? {
            GallaiVerdict::Packing { paths } => {
                branches[0] += 1;
                t.check(paths.len() == k, || format!("instance {i}: {} paths for k = {k}", paths.len()));
                t.check(paths.iter().all(|p| is_a_path(g, &a, p)), || format!("instance {i}: not an A-path"));
                let sets: Vec<VertexSet> = paths.iter().map(|p| p.iter().copied().collect()).collect();
                let disjoint = (0..sets.len()).all(|p| sets[p + 1..].iter().all(|q| q.is_disjoint(&sets[p])));
                t.check(disjoint, || format!("instance {i}: paths overlap"));
            }
            GallaiVerdict::Hitting { mut set } => {
                branches[1] += 1;
                if fault == Some(Fault::DropHittingVertex) {
                    if let Some(v) = set.first() {
                        set.remove(v);
                    }
                }
                t.check(set.len() <= 2 * k - 2, || format!("instance {i}: |Z| = {} > 2k − 2 for k = {k}", set.len()));
                t.check(separates_a(g, &a, &set), || format!("instance {i}: Z misses an A-path"));
            }
        }
    }
    t.note(format!("{} instances, packing {} / hitting {}, |Z| ≤ 2k−2", t.checked, branches[0], branches[1]));
    Ok(t)
}

fn grid_lower_bound(caps: &Caps) -> Result<Tally, Error> {
    let mut t = Tally::default();
    for (r, n) in [(3, 9), (5, 15)] {
        let mut spec = menger_lower_bound_instance(r, n, 1)?;
        verify_annotations(&mut spec, caps)?;
        let mut measured = Vec::new();
        for ann in &spec.annotations {
            t.checked += 1;
            let value = ann.measured.clone().unwrap_or_default();
            measured.push(value.to_string());
            t.check(ann.verified == Some(true), || {
                format!("{r}x{n}: {:?} measured {value}", ann.property)
            });
        }
        t.note(format!("{r}x{n}: packing {}, cover {}, rows per ball {}", measured[0], measured[1], measured[2]));
    }
    Ok(t)
}

fn weak_duality(seed: u64, caps: &Caps) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let mut specs = connected_graphs(seed, 60, 3, 9, false)?;
    specs.extend(connected_graphs(seed.wrapping_add(1), 60, 3, 9, true)?);
    let r_values = [1.0, 2.0, 3.0, 4.0];
    let beta_values = [0.0, 0.5, 1.0, 1.5];
    let mut pairs = 0;
    for (i, spec) in specs.iter().enumerate() {
        let (x, y) = xy(spec);
        for ell in [0.0, 1.0] {
            let report = duality_sweep(
                &spec.graph,
                &PathFamily::lxy(ell, x.clone(), y.clone()),
                &r_values,
                &beta_values,
                SolveMode::Exact,
                caps,
            )?;
            let exact = |s: CellStatus| s == CellStatus::Exact;
            for p in report.packing_by_r.iter().filter(|c| exact(c.status)) {
                pairs += report
                    .cover_by_radius
                    .iter()
                    .filter(|c| exact(c.status) && p.r > 2.0 * c.beta)
                    .count();
            }
            t.checked += 1;
            let v = weak_duality_violations(&report);
            t.check(v.is_empty(), || format!("instance {i}, ℓ = {ell}: violations at (r, β) = {v:?}"));
        }
    }
    t.check(pairs > 0, || "no exact cell pair was compared".to_string());
    t.note(format!("{} sweeps, {pairs} exact (r, β) pairs with r > 2β, zero violations required", t.checked));
    Ok(t)
}

/// Largest number of pairwise disjoint sets among `masks`, by exhaustion.
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

fn mask(set: &VertexSet) -> u64 {
    set.iter().fold(0, |m, v| m | 1 << v)
}

fn helly(seed: u64) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let mut branches = [0usize; 2];
    for (i, inst) in random_helly_instances(seed, 500, 12, 10, 4).iter().enumerate() {
        let k = inst.k;
        let masks: Vec<u64> = inst.subtrees.iter().map(mask).collect();
        let best = max_disjoint(&masks, 0);
        t.checked += 1;
        match tree_helly(&inst.tree, &inst.subtrees, k)? {
            HellyOutcome::Disjoint(chosen) => {
                branches[0] += 1;
                let distinct: VertexSet = chosen.iter().copied().collect();
                let ok = chosen.len() == k
                    && distinct.len() == k
                    && chosen.iter().all(|&c| c < masks.len())
                    && chosen.iter().map(|&c| masks[c]).try_fold(0u64, |acc, m| (acc & m == 0).then_some(acc | m)).is_some();
                t.check(ok, || format!("instance {i}: {chosen:?} are not {k} disjoint subtrees"));
            }
            HellyOutcome::Hitting(h) => {
                branches[1] += 1;
                let hm = mask(&h);
                t.check(h.len() < k, || format!("instance {i}: {} hitting nodes for k = {k}", h.len()));
                t.check(masks.iter().all(|m| m & hm != 0), || format!("instance {i}: hitting set misses a subtree"));
                t.check(best < k, || format!("instance {i}: hitting returned but {best} disjoint subtrees exist"));
            }
        }
    }
    t.note(format!("{} instances, disjoint {} / hitting {}", t.checked, branches[0], branches[1]));
    Ok(t)
}

fn easy_tree(seed: u64, caps: &Caps) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let mut branches = [0usize; 2];
    for (i, inst) in random_easy_tree_instances(seed, 100)?.iter().enumerate() {
        let g = &inst.graph;
        let all = g.all_vertices();
        let td = inst.tree_decomposition()?;
        let fam = &inst.family;
        let p = inst.params;
        t.checked += 1;
        match easy_tree_hitting(g, &all, fam, &Location::trivial(&all), &td, &p, caps)? {
            EasyTreeOutcome::Hitting { set, .. } => {
                branches[1] += 1;
                let budget = (fam.component_count * p.k).saturating_sub(1) * p.xi;
                let certified = matches!(
                    certify_centered(g, &set.members, budget, p.eta + p.r, SearchMode::Exact, caps)?,
                    Certification::Centered(_)
                );
                t.check(certified, || format!("instance {i}: hitting set is not ({budget}, {})-centered", p.eta + p.r));
                let hits = (0..fam.members.len()).all(|m| fam.member_vertices(m).intersects(&set.members));
                t.check(hits, || format!("instance {i}: hitting set misses a member"));
            }
            EasyTreeOutcome::Packing { members } => {
                branches[0] += 1;
                t.check(members.len() == p.k, || format!("instance {i}: {} members packed for k = {}", members.len(), p.k));
                let closed = members.iter().all(|m| fam.members.contains(&m.components));
                t.check(closed, || format!("instance {i}: packed member is not in the family"));
                let sets: Vec<VertexSet> = members.iter().map(|m| m.vertices()).collect();
                for a in 0..sets.len() {
                    for b in a + 1..sets.len() {
                        let d = g.set_distance(&sets[a], &sets[b])?;
                        t.check(d > 2.0 * p.r, || format!("instance {i}: packed members at distance {d} ≤ 2r = {}", 2.0 * p.r));
                    }
                }
            }
        }
    }
    t.note(format!("{} partial 2-trees, packing {} / hitting {}", t.checked, branches[0], branches[1]));
    Ok(t)
}

fn rooted_grid(caps: &Caps) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let mut sizes = Vec::new();
    for w in [3, 4, 5] {
        let spec = rooted_p3_grid(w)?;
        let g = &spec.graph;
        let pattern = spec.rooted_pattern()?;
        let td = TreeDecomposition::min_degree(g, &g.all_vertices())?;
        t.checked += 1;
        let report = rooted_fat_minor_ep(g, &td, &pattern, 2, 1.0, 0.0, caps)?;
        t.check(matches!(report.outcome, RootedEpOutcome::Hitting { .. }), || {
            format!("w = {w}: the tree lemma packed two disjoint models")
        });
        let pair = disjoint_model_pair(g, &pattern, caps)?;
        t.check(pair.is_none(), || format!("w = {w}: exhaustive search found two disjoint models"));
        sizes.push(min_model_hitting_set(g, &pattern, 0.0, caps)?.len());
    }
    t.check(sizes.windows(2).all(|s| s[0] <= s[1]), || format!("hitting sizes {sizes:?} decrease"));
    t.note(format!("w = 3, 4, 5: no disjoint pair, min hitting sizes {sizes:?}"));
    Ok(t)
}

/// `(m, a)`, `(c1, c2)`, and the intermediates for the probe witness
/// `f = kr + ℓ`, `g = r + 2ℓ` at `k = 2, r = 1, ℓ = 1`, worked out by hand:
/// `[r′, ℓ′, ξ1, η1, η2, η3, ℓ″, η4, f′, g′]`.
const PINNED: [((f64, f64), (f64, f64), [f64; 10]); 3] = [
    ((1.0, 0.0), (4.0, 4.0), [5.0, 1.0, 11.0, 7.0, 14.0, 16.0, 1.0, 5.0, 12.0, 16.0]),
    ((2.0, 1.0), (39.0, 24.0), [41.0, 5.0, 87.0, 51.0, 210.0, 220.0, 12.0, 27.0, 88.0, 220.0]),
    ((3.0, 2.0), (138.0, 62.0), [141.0, 9.0, 291.0, 159.0, 972.0, 996.0, 33.0, 69.0, 292.0, 996.0]),
];

fn as_row(i: &TransferIntermediates) -> [f64; 10] {
    [
        i.r_prime,
        i.ell_prime,
        i.xi1,
        i.eta1,
        i.eta2,
        i.eta3,
        i.ell_second,
        i.eta4,
        i.count,
        i.radius,
    ]
}

fn constants() -> Result<Tally, Error> {
    let mut t = Tally::default();
    let probe = WitnessFunctions::new(|k, r, ell| k as f64 * r + ell, |_, r, ell| r + 2.0 * ell, "f = kr + l; g = r + 2l");
    for ((m, a), c, row) in PINNED {
        t.checked += 1;
        let got = transfer_constants(m, a);
        t.check(got == c, || format!("(m, a) = ({m}, {a}): constants {got:?}, expected {c:?}"));
        let inter = transfer_intermediates(m, a, &probe, 2, 1.0, 1.0);
        t.check(as_row(&inter) == row, || {
            format!("(m, a) = ({m}, {a}): intermediates {:?}, expected {row:?}", as_row(&inter))
        });
        let remote = transfer_witness(m, a, &probe, WitnessVariant::Remote);
        t.check(remote.count(2, 1.0, 1.0) == row[8] && remote.radius(2, 1.0, 1.0) == row[9], || {
            format!("(m, a) = ({m}, {a}): composed witness disagrees with its intermediates")
        });
        let at_zero = transfer_intermediates(m, a, &probe, 2, 1.0, 0.0);
        let menger = transfer_witness(m, a, &probe, WitnessVariant::Menger);
        t.check(menger.count(2, 1.0, 7.0) == at_zero.count && menger.radius(2, 1.0, 7.0) == at_zero.radius, || {
            format!("(m, a) = ({m}, {a}): Menger variant is not the ℓ = 0 chain")
        });
    }
    t.note("c1, c2 and all intermediates match at (1,0), (2,1), (3,2)".to_string());
    Ok(t)
}

/// Whether `z` meets every simple path with one end in `a`, the other in
/// `b`, ends at distance at least `ell`, by walking all of them.
fn hits_every_member(g: &Graph, a: &VertexSet, b: &VertexSet, ell: f64, z: &VertexSet) -> bool {
    fn walk(g: &Graph, path: &mut Vec<usize>, member: &dyn Fn(usize, usize) -> bool, z: &VertexSet) -> bool {
        let (s, t) = (path[0], path[path.len() - 1]);
        if member(s, t) {
            return false;
        }
        let next: Vec<usize> = g.neighbors(t).filter(|w| !path.contains(w) && !z.contains(*w)).collect();
        for w in next {
            path.push(w);
            let clean = walk(g, path, member, z);
            path.pop();
            if !clean {
                return false;
            }
        }
        true
    }
    let member =
        |s: usize, t: usize| ((a.contains(s) && b.contains(t)) || (a.contains(t) && b.contains(s))) && g.dist(s, t) >= ell - 1e-9;
    a.union(b)
        .iter()
        .filter(|&s| !z.contains(s))
        .all(|s| walk(g, &mut vec![s], &member, z))
}

fn pullback(seed: u64, caps: &Caps) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let (mut hitting, mut packing, mut greedy_targets) = (0, 0, 0);
    for (i, spec) in connected_graphs(seed, 50, 3, 10, false)?.iter().enumerate() {
        let src = &spec.graph;
        let (a, b) = xy(spec);
        let (tgt, q) = subdivide_each_edge(src, 1)?;
        let k = 2 + i % 2;
        let r = (1 + i % 3) as f64;
        for ell in [0.0, 2.0] {
            let target_family = PathFamily::lxy(q.m * ell + 3.0 * q.a, q.image(&a), q.image(&b));
            let z_target = match cover(&tgt, target_family.clone(), 0.0, SolveMode::Exact, caps) {
                Ok(sol) => sol.centered.centers,
                Err(e) if e.is_capacity() => {
                    greedy_targets += 1;
                    cover(&tgt, target_family, 0.0, SolveMode::Greedy, caps)?.centered.centers
                }
                Err(e) => return Err(e),
            };
            let params = PullbackParams {
                a: a.clone(),
                b: b.clone(),
                k,
                r,
                ell,
            };
            t.checked += 1;
            match pullback_hitting_set(src, &tgt, &q, &z_target, &params, caps) {
                Ok(out) => {
                    hitting += 1;
                    t.check(hits_every_member(src, &a, &b, ell, &out.set), || {
                        format!("instance {i}, ℓ = {ell}: pulled-back set misses a source path")
                    });
                }
                Err(Error::Precondition(why)) => {
                    packing += 1;
                    let found =
                        max_far_packing(&PackingInstance::lxy(src, ell, a.clone(), b.clone(), r, SolveMode::Exact), caps)?;
                    t.check(found.size >= k, || {
                        format!("instance {i}, ℓ = {ell}: refused ({why}) but only {} far paths exist", found.size)
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    t.note(format!(
        "{} runs, hitting {hitting} / source packs {packing}, {greedy_targets} greedy target sets",
        t.checked
    ));
    Ok(t)
}

fn scaling(seed: u64, caps: &Caps) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let settings = [(1.0, 0.0, 0.0), (2.0, 1.0, 1.0), (1.5, 0.5, 0.5)];
    for (i, spec) in connected_graphs(seed, 50, 3, 9, true)?.iter().enumerate() {
        let g = &spec.graph;
        let (x, y) = xy(spec);
        for &(r, ell, beta) in &settings {
            let family = PathFamily::lxy(ell, x.clone(), y.clone());
            let base_pack = max_far_packing(
                &PackingInstance {
                    host: g,
                    family: family.clone(),
                    r,
                    mode: SolveMode::Exact,
                },
                caps,
            )?;
            let base_cover = cover(g, family.clone(), beta, SolveMode::Exact, caps)?;
            for lambda in [2.0, 1.0 / 3.0] {
                let h = scale_metric(g, lambda)?;
                let pack = max_far_packing(
                    &PackingInstance {
                        host: &h,
                        family: family.scaled(lambda),
                        r: r * lambda,
                        mode: SolveMode::Exact,
                    },
                    caps,
                )?;
                let cov = cover(&h, family.scaled(lambda), beta * lambda, SolveMode::Exact, caps)?;
                t.checked += 1;
                let exact = base_pack.optimal && pack.optimal && base_cover.optimal && cov.optimal;
                t.check(exact, || format!("instance {i}, λ = {lambda}: not all solves exact"));
                t.check(pack.size == base_pack.size && cov.count == base_cover.count, || {
                    format!(
                        "instance {i}, λ = {lambda}, (r, ℓ, β) = ({r}, {ell}, {beta}): sizes {}/{} vs {}/{}",
                        pack.size, cov.count, base_pack.size, base_cover.count
                    )
                });
                let same_paths = pack.paths.iter().map(|p| &p.sequence).eq(base_pack.paths.iter().map(|p| &p.sequence));
                t.check(same_paths && cov.centered.centers == base_cover.centered.centers, || {
                    format!("instance {i}, λ = {lambda}, (r, ℓ, β) = ({r}, {ell}, {beta}): witnesses differ")
                });
            }
        }
    }
    t.note(format!("{} scaled solves at λ ∈ {{2, 1/3}}, sizes and witnesses unchanged", t.checked));
    Ok(t)
}

fn tangle(seed: u64, caps: &Caps) -> Result<Tally, Error> {
    let mut t = Tally::default();
    let mut seen = [0usize; 3];
    for (i, inst) in random_tangle_instances(seed, 100, 9)?.iter().enumerate() {
        t.checked += 1;
        let out = match tangle_trichotomy(&inst.graph, &inst.host, &inst.family, &inst.z, &inst.params, caps) {
            Ok(out) => out,
            Err(e) => {
                t.fail(format!("instance {i}: {e}"));
                continue;
            }
        };
        if let Err(e) = check_outcome(&inst.graph, &inst.host, &inst.family, &inst.z, &inst.params, &out, caps) {
            t.fail(format!("instance {i}: certificate rejected: {e}"));
        }
        match &out {
            TrichotomyOutcome::Hitting { .. } => seen[0] += 1,
            TrichotomyOutcome::Split { .. } => seen[1] += 1,
            TrichotomyOutcome::Tangle { tangle } => {
                seen[2] += 1;
                let verdict = verify_tangle(&inst.graph, tangle, caps)?;
                t.check(verdict.is_valid(), || format!("instance {i}: returned tangle fails {verdict:?}"));
            }
        }
    }
    t.note(format!(
        "{} instances, hitting {} / split {} / tangle {}",
        t.checked, seen[0], seen[1], seen[2]
    ));
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_parse_by_name_and_number() {
        assert_eq!("menger".parse::<Criterion>().unwrap(), Criterion::Menger);
        assert_eq!("12".parse::<Criterion>().unwrap(), Criterion::Determinism);
        assert!("13".parse::<Criterion>().is_err());
        for c in Criterion::ALL {
            assert_eq!(c.name().parse::<Criterion>().unwrap(), c);
        }
    }

    #[test]
    fn separation_oracle() {
        // path 0-1-2 with A = {0, 2}
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let a = VertexSet::from([0, 2]);
        assert!(!separates_a(&g, &a, &VertexSet::new()));
        assert!(separates_a(&g, &a, &VertexSet::from([1])));
        assert!(separates_a(&g, &a, &VertexSet::from([0])));
    }
}
