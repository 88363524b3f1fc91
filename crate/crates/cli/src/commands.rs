//! The experiment commands, independent of argument parsing.

use std::path::PathBuf;

use coarse_menger::covering::{duality_sweep, weak_duality_violations, DualityReport};
use coarse_menger::generators::{
    grid, json_fingerprint, menger_lower_bound_instance, random_easy_tree_instances, random_helly_instances,
    random_instances, random_tangle_instances, rooted_p3_grid, verify_annotations, RandomConfig, RandomFamily,
};
use coarse_menger::packing::SolveMode;
use coarse_menger::tangle::{check_outcome, tangle_trichotomy, verify_tangle, TrichotomyOutcome};
use coarse_menger::transfer::{
    subdivide_each_edge, transfer_constants, transfer_intermediates, transfer_witness, verify_quasi_isometry,
    QuasiIsometryVerdict, TransferIntermediates, WitnessVariant,
};
use coarse_menger::{Caps, InstanceSpec, PathFamily, WitnessFunctions};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::report::{read_file, Report};

/// How a finished run should exit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    InvariantViolation,
    CapacityExceeded,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Ok => 0,
            RunStatus::InvariantViolation => 2,
            RunStatus::CapacityExceeded => 3,
        }
    }
}

/// `--grid RxC`.
pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("grid `{s}` is not of the form RxC"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("grid `{s}`: `{t}` is not a count"));
    let (r, c) = (parse(r)?, parse(c)?);
    if r == 0 || c == 0 {
        return Err(format!("grid `{s}` is empty"));
    }
    Ok((r, c))
}

/// One finite nonnegative threshold.
pub fn parse_threshold(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be finite and nonnegative"))
    }
}

/// Reads one instance or an array of them. Decoding errors carry serde's
/// line and column; missing X or Y name the instance.
pub fn load_instances(path: &PathBuf) -> CliResult<Vec<InstanceSpec>> {
    let text = read_file(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))?;
    let items = match value {
        Value::Array(items) => items,
        single => vec![single],
    };
    items
        .into_iter()
        .enumerate()
        .map(|(i, item)| {
            serde_json::from_value::<InstanceSpec>(item)
                .map_err(|e| CliError::config(format!("{}: instance {i}: {e}", path.display())))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityConfig {
    pub grids: Vec<(usize, usize)>,
    pub files: Vec<PathBuf>,
    pub ell: Vec<f64>,
    pub r: Vec<f64>,
    pub beta: Vec<f64>,
    pub mode: SolveMode,
    pub strict: bool,
    pub jobs: usize,
    pub caps: Caps,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityEntry {
    pub instance: String,
    pub vertices: usize,
    pub edges: usize,
    pub report: DualityReport,
    /// `(r, β)` exact cells with `r > 2β` and fewer balls than paths.
    pub weak_duality_violations: Vec<(f64, f64)>,
}

pub struct DualityRun {
    pub report: Report<Vec<DualityEntry>>,
    pub csv: String,
    pub status: RunStatus,
}

/// Grids get X = first column and Y = last column.
pub fn run_duality(config: &DualityConfig) -> CliResult<DualityRun> {
    let mut instances = Vec::new();
    for &(rows, cols) in &config.grids {
        let g = grid(rows, cols)?;
        let mut spec = InstanceSpec::new("grid", g.graph.clone()).param("rows", rows).param("cols", cols);
        spec.x = Some(g.column(0));
        spec.y = Some(g.column(cols - 1));
        instances.push(spec);
    }
    for path in &config.files {
        instances.extend(load_instances(path)?);
    }
    let mut jobs = Vec::new();
    for (i, spec) in instances.iter().enumerate() {
        let (Some(x), Some(y)) = (&spec.x, &spec.y) else {
            return Err(CliError::config(format!("instance {i} ({}) has no `x` or `y`", spec.family)));
        };
        for &ell in &config.ell {
            jobs.push((spec, PathFamily::lxy(ell, x.clone(), y.clone())));
        }
    }
    let entries: Vec<CliResult<DualityEntry>> = pool(config.jobs)?.install(|| {
        jobs.par_iter()
            .map(|(spec, family)| {
                let report = duality_sweep(&spec.graph, family, &config.r, &config.beta, config.mode, &config.caps)?;
                Ok(DualityEntry {
                    instance: spec.family.clone(),
                    vertices: spec.graph.vertex_count(),
                    edges: spec.graph.edge_count(),
                    weak_duality_violations: weak_duality_violations(&report),
                    report,
                })
            })
            .collect()
    });
    let mut entries = entries.into_iter().collect::<CliResult<Vec<_>>>()?;
    entries.sort_by(|a, b| a.report.fingerprint.cmp(&b.report.fingerprint));
    let mut csv = String::from("fingerprint,table,threshold,value,status\n");
    for e in &entries {
        csv.extend(e.report.to_csv().lines().skip(1).map(|l| format!("{l}\n")));
    }
    let status = if entries.iter().any(|e| !e.weak_duality_violations.is_empty()) {
        RunStatus::InvariantViolation
    } else if config.strict && entries.iter().any(|e| e.report.has_capacity_fallback()) {
        RunStatus::CapacityExceeded
    } else {
        RunStatus::Ok
    };
    Ok(DualityRun {
        report: Report::new("run-duality", config, entries),
        csv,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangleLabConfig {
    pub seed: u64,
    pub count: usize,
    pub max_vertices: usize,
    pub jobs: usize,
    pub caps: Caps,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangleLabEntry {
    pub fingerprint: String,
    pub vertices: usize,
    pub members: usize,
    pub k: usize,
    pub theta: usize,
    /// `hitting`, `split`, `tangle`, or `error`.
    pub outcome: String,
    pub certificate_ok: bool,
    pub detail: Option<String>,
}

pub struct TangleLabRun {
    pub report: Report<Vec<TangleLabEntry>>,
    pub status: RunStatus,
}

pub fn run_tangle_lab(config: &TangleLabConfig) -> CliResult<TangleLabRun> {
    let instances = random_tangle_instances(config.seed, config.count, config.max_vertices)?;
    let caps = &config.caps;
    let mut entries: Vec<TangleLabEntry> = pool(config.jobs)?.install(|| {
        instances
            .par_iter()
            .map(|inst| {
                let mut entry = TangleLabEntry {
                    fingerprint: json_fingerprint(inst),
                    vertices: inst.graph.vertex_count(),
                    members: inst.family.len(),
                    k: inst.params.k,
                    theta: inst.params.theta,
                    outcome: "error".to_string(),
                    certificate_ok: false,
                    detail: None,
                };
                let out = match tangle_trichotomy(&inst.graph, &inst.host, &inst.family, &inst.z, &inst.params, caps) {
                    Ok(out) => out,
                    Err(e) => {
                        entry.detail = Some(e.to_string());
                        return entry;
                    }
                };
                entry.outcome = match &out {
                    TrichotomyOutcome::Hitting { .. } => "hitting",
                    TrichotomyOutcome::Split { .. } => "split",
                    TrichotomyOutcome::Tangle { .. } => "tangle",
                }
                .to_string();
                let checked = check_outcome(&inst.graph, &inst.host, &inst.family, &inst.z, &inst.params, &out, caps)
                    .and_then(|()| match &out {
                        TrichotomyOutcome::Tangle { tangle } => verify_tangle(&inst.graph, tangle, caps).map(|v| {
                            (!v.is_valid()).then(|| format!("{v:?}"))
                        }),
                        _ => Ok(None),
                    });
                match checked {
                    Ok(None) => entry.certificate_ok = true,
                    Ok(Some(why)) => entry.detail = Some(why),
                    Err(e) => entry.detail = Some(e.to_string()),
                }
                entry
            })
            .collect()
    });
    entries.sort_by(|a, b| a.fingerprint.cmp(&b.fingerprint));
    let status = if entries.iter().all(|e| e.certificate_ok) {
        RunStatus::Ok
    } else if entries
        .iter()
        .filter(|e| !e.certificate_ok)
        .all(|e| e.detail.as_deref().is_some_and(|d| d.starts_with("capacity")))
    {
        RunStatus::CapacityExceeded
    } else {
        RunStatus::InvariantViolation
    };
    Ok(TangleLabRun {
        report: Report::new("run-tangle-lab", config, entries),
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferConfig {
    /// `(m, a)` pairs.
    pub pairs: Vec<(f64, f64)>,
    pub k: usize,
    pub r: f64,
    pub ell: f64,
    /// Grids whose edge subdivisions are checked as quasi-isometries.
    pub grids: Vec<(usize, usize)>,
    pub subdivide: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferEntry {
    pub m: f64,
    pub a: f64,
    pub c1: f64,
    pub c2: f64,
    pub intermediates: TransferIntermediates,
    /// Menger and Gallai variants evaluated at `(k, r)`.
    pub menger: (f64, f64),
    pub gallai: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubdivisionCheck {
    pub rows: usize,
    pub cols: usize,
    pub subdivisions: usize,
    pub verdict: QuasiIsometryVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferResults {
    pub probe: String,
    pub pairs: Vec<TransferEntry>,
    pub subdivisions: Vec<SubdivisionCheck>,
}

pub struct TransferRun {
    pub report: Report<TransferResults>,
    pub status: RunStatus,
}

/// Composes the probe witness `f = kr + ℓ`, `g = r + 2ℓ` through each
/// `(m, a)` and reports every intermediate.
pub fn run_transfer(config: &TransferConfig) -> CliResult<TransferRun> {
    let probe = WitnessFunctions::new(|k, r, ell| k as f64 * r + ell, |_, r, ell| r + 2.0 * ell, "f = kr + l; g = r + 2l");
    let (k, r, ell) = (config.k, config.r, config.ell);
    let mut pairs = Vec::new();
    for &(m, a) in &config.pairs {
        if !(m >= 1.0 && a >= 0.0) {
            return Err(CliError::config(format!("pair ({m}, {a}): need m ≥ 1 and a ≥ 0")));
        }
        let (c1, c2) = transfer_constants(m, a);
        let eval = |v| {
            let w = transfer_witness(m, a, &probe, v);
            (w.count(k, r, ell), w.radius(k, r, ell))
        };
        pairs.push(TransferEntry {
            m,
            a,
            c1,
            c2,
            intermediates: transfer_intermediates(m, a, &probe, k, r, ell),
            menger: eval(WitnessVariant::Menger),
            gallai: eval(WitnessVariant::Gallai),
        });
    }
    let mut subdivisions = Vec::new();
    for &(rows, cols) in &config.grids {
        let g = grid(rows, cols)?;
        let (sub, q) = subdivide_each_edge(&g.graph, config.subdivide)?;
        subdivisions.push(SubdivisionCheck {
            rows,
            cols,
            subdivisions: config.subdivide,
            verdict: verify_quasi_isometry(&g.graph, &sub, &q)?,
        });
    }
    let status = if subdivisions.iter().all(|s| s.verdict.holds) {
        RunStatus::Ok
    } else {
        RunStatus::InvariantViolation
    };
    Ok(TransferRun {
        report: Report::new(
            "run-transfer",
            config,
            TransferResults {
                probe: probe.formula.clone(),
                pairs,
                subdivisions,
            },
        ),
        status,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenFamily {
    LowerBound,
    RootedGrid,
    Random,
    PartialKTree,
    Tangle,
    Helly,
    EasyTree,
}

impl std::str::FromStr for GenFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        serde_json::from_value(Value::String(s.to_string())).map_err(|_| {
            format!("unknown family `{s}`; expected lower-bound, rooted-grid, random, partial-k-tree, tangle, helly or easy-tree")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub family: GenFamily,
    pub seed: u64,
    pub count: usize,
    /// Lower-bound grid `r × n` with ball radius `s`.
    pub r: usize,
    pub n: usize,
    pub s: usize,
    /// Rooted grid sizes.
    pub w: Vec<usize>,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub edge_probability: f64,
    pub connected: bool,
    pub weighted: bool,
    pub k: usize,
    /// Check annotations before writing.
    pub verify: bool,
    pub caps: Caps,
}

/// Instances as a bare JSON array, readable by `run-duality --file` for the
/// families that carry X and Y.
pub fn run_gen(config: &GenConfig) -> CliResult<Value> {
    let mut specs: Vec<InstanceSpec> = match config.family {
        GenFamily::LowerBound => vec![menger_lower_bound_instance(config.r, config.n, config.s)?],
        GenFamily::RootedGrid => config.w.iter().map(|&w| rooted_p3_grid(w)).collect::<Result<_, _>>()?,
        GenFamily::Random | GenFamily::PartialKTree => {
            let family = if config.family == GenFamily::Random {
                RandomFamily::General {
                    edge_probability: config.edge_probability,
                    connected: config.connected,
                }
            } else {
                RandomFamily::PartialKTree { k: config.k }
            };
            random_instances(
                config.seed,
                config.count,
                &RandomConfig {
                    family,
                    min_vertices: config.min_vertices,
                    max_vertices: config.max_vertices,
                    weighted: config.weighted,
                },
            )?
        }
        GenFamily::Tangle => {
            return Ok(json(&random_tangle_instances(config.seed, config.count, config.max_vertices)?));
        }
        GenFamily::Helly => {
            return Ok(json(&random_helly_instances(
                config.seed,
                config.count,
                config.max_vertices,
                10,
                config.k.max(1),
            )));
        }
        GenFamily::EasyTree => return Ok(json(&random_easy_tree_instances(config.seed, config.count)?)),
    };
    if config.verify {
        for spec in &mut specs {
            verify_annotations(spec, &config.caps)?;
        }
    }
    Ok(json(&specs))
}

fn json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

fn pool(jobs: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::config(format!("cannot start {jobs} worker threads: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn duality(grids: Vec<(usize, usize)>) -> DualityConfig {
        DualityConfig {
            grids,
            files: Vec::new(),
            ell: vec![0.0],
            r: vec![1.0, 3.0],
            beta: vec![0.0, 1.0],
            mode: SolveMode::Exact,
            strict: false,
            jobs: 2,
            caps: Caps::default(),
        }
    }

    #[test]
    fn grid_three_by_nine_table() {
        let run = run_duality(&duality(vec![(3, 9)])).unwrap();
        assert_eq!(run.status, RunStatus::Ok);
        let rep = &run.report.results[0].report;
        let packing: Vec<usize> = rep.packing_by_r.iter().map(|c| c.size).collect();
        let cover: Vec<usize> = rep.cover_by_radius.iter().map(|c| c.balls).collect();
        assert_eq!(packing, vec![3, 1]);
        assert_eq!(cover, vec![3, 1]);
        assert_eq!(run.csv.lines().count(), 5);
    }

    #[test]
    fn empty_instance_list_is_fine() {
        let run = run_duality(&duality(Vec::new())).unwrap();
        assert!(run.report.results.is_empty());
        assert_eq!(run.status, RunStatus::Ok);
    }

    #[test]
    fn capacity_fallback_only_fails_when_strict() {
        let mut config = duality(vec![(3, 9)]);
        config.caps = Caps::default().with_overrides("path_vertices=4,search_nodes=1").unwrap();
        let run = run_duality(&config).unwrap();
        assert!(run.report.results[0].report.has_capacity_fallback());
        assert_eq!(run.status, RunStatus::Ok);
        config.strict = true;
        assert_eq!(run_duality(&config).unwrap().status, RunStatus::CapacityExceeded);
    }

    #[test]
    fn parallel_order_is_stable() {
        let mut config = duality(vec![(2, 3), (3, 3), (2, 5), (3, 4)]);
        config.jobs = 1;
        let one = run_duality(&config).unwrap().report.canonical();
        config.jobs = 4;
        assert_eq!(run_duality(&config).unwrap().report.canonical(), one.replace("\"jobs\":1", "\"jobs\":4"));
    }

    #[test]
    fn flag_grammar() {
        assert_eq!(parse_grid("3x9"), Ok((3, 9)));
        assert!(parse_grid("3by9").is_err());
        assert!(parse_grid("0x2").is_err());
        assert_eq!(parse_threshold(" 1.5"), Ok(1.5));
        assert!(parse_threshold("-2").is_err());
        assert_eq!("easy-tree".parse::<GenFamily>(), Ok(GenFamily::EasyTree));
    }

    #[test]
    fn transfer_pins_the_first_pair() {
        let run = run_transfer(&TransferConfig {
            pairs: vec![(1.0, 0.0)],
            k: 2,
            r: 1.0,
            ell: 1.0,
            grids: vec![(2, 3)],
            subdivide: 1,
        })
        .unwrap();
        assert_eq!(run.status, RunStatus::Ok);
        let e = &run.report.results.pairs[0];
        assert_eq!((e.c1, e.c2), (4.0, 4.0));
        assert_eq!(e.intermediates.count, 12.0);
    }
}
