use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coarse_menger::packing::SolveMode;
use coarse_menger::Caps;
use coarse_menger_cli::acceptance::{run_acceptance, AcceptanceConfig, Criterion, Fault};
use coarse_menger_cli::commands::{
    parse_grid, parse_threshold, run_duality, run_gen, run_tangle_lab, run_transfer, DualityConfig, GenConfig, GenFamily,
    RunStatus, TangleLabConfig, TransferConfig,
};
use coarse_menger_cli::report::{write_file, Report};
use coarse_menger_cli::CliResult;

/// Packing and covering experiments on pairwise-far paths.
///
/// Exit codes: 0 success, 1 malformed configuration, 2 invariant
/// violation or failed criterion, 3 capacity exceeded (with --strict).
/// COARSE_MENGER_CAP overrides the solver size limits, e.g.
/// `path_vertices=20,search_nodes=5000000`.
#[derive(Parser)]
#[command(name = "coarse-menger", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Packing sizes over r and cover sizes over β for each instance.
    RunDuality(DualityArgs),
    /// The acceptance criteria on fixed seeds.
    RunAcceptance(AcceptanceArgs),
    /// The tangle trichotomy on seeded random instances, every outcome re-checked.
    RunTangleLab(TangleArgs),
    /// Transfer constants and composed witness bounds.
    RunTransfer(TransferArgs),
    /// Writes generated instances as JSON.
    Gen(GenArgs),
}

#[derive(Args)]
struct Output {
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
}

#[derive(Args)]
struct DualityArgs {
    /// An R×C grid with X the first column and Y the last; repeatable.
    #[arg(long, value_parser = parse_grid)]
    grid: Vec<(usize, usize)>,
    /// JSON instance file (one instance or an array); repeatable.
    #[arg(long)]
    file: Vec<PathBuf>,
    /// Path thresholds ℓ.
    #[arg(long, default_value = "0", value_delimiter = ',', value_parser = parse_threshold)]
    ell: Vec<f64>,
    /// Packing thresholds.
    #[arg(long, default_value = "1", value_delimiter = ',', value_parser = parse_threshold)]
    r: Vec<f64>,
    /// Ball radii.
    #[arg(long, default_value = "0", value_delimiter = ',', value_parser = parse_threshold)]
    beta: Vec<f64>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Exit 3 when any exact cell fell back to a greedy value.
    #[arg(long)]
    strict: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// CSV path; defaults to the report path with a .csv extension.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AcceptanceArgs {
    /// Criteria by name or number, comma separated.
    #[arg(long, value_delimiter = ',')]
    only: Vec<Criterion>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Mutate a solver to check that the suite notices.
    #[arg(long)]
    inject_fault: Option<Fault>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TangleArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 9)]
    max_vertices: usize,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[command(flatten)]
    output: Output,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (m, a) = s.split_once(':').ok_or_else(|| format!("pair `{s}` is not m:a"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("pair `{s}`: `{t}` is not a number"));
    Ok((num(m)?, num(a)?))
}

#[derive(Args)]
struct TransferArgs {
    /// Quasi-isometry constants as m:a, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1:0,2:1,3:2", value_parser = parse_pair)]
    pairs: Vec<(f64, f64)>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 1.0)]
    ell: f64,
    /// Grids whose edge subdivisions are checked as quasi-isometries.
    #[arg(long, value_parser = parse_grid)]
    grid: Vec<(usize, usize)>,
    #[arg(long, default_value_t = 1)]
    subdivide: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GenArgs {
    /// lower-bound, rooted-grid, random, partial-k-tree, tangle, helly or easy-tree.
    #[arg(long)]
    family: GenFamily,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long, default_value_t = 9)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    s: usize,
    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    w: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    min_vertices: usize,
    #[arg(long, default_value_t = 10)]
    max_vertices: usize,
    #[arg(long, default_value_t = 0.3)]
    edge_probability: f64,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    weighted: bool,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Check annotations and record the measured values.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    output: Output,
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_report<T: serde::Serialize>(out: &Option<PathBuf>, report: &Report<T>) -> CliResult<()> {
    emit(out, &report.to_json())
}

fn run(cli: Cli) -> CliResult<i32> {
    let caps = Caps::from_env()?;
    match cli.command {
        Command::RunDuality(a) => {
            let config = DualityConfig {
                grids: a.grid,
                files: a.file,
                ell: a.ell,
                r: a.r,
                beta: a.beta,
                mode: match a.mode {
                    Mode::Exact => SolveMode::Exact,
                    Mode::Greedy => SolveMode::Greedy,
                },
                strict: a.strict,
                jobs: a.jobs,
                caps,
            };
            let run = run_duality(&config)?;
            emit_report(&a.output.out, &run.report)?;
            let csv_path = a.csv.or_else(|| a.output.out.as_deref().map(|p| p.with_extension("csv")));
            if let Some(path) = csv_path {
                write_file(&path, &run.csv)?;
            }
            for e in run.report.results.iter().filter(|e| !e.weak_duality_violations.is_empty()) {
                eprintln!("weak duality violated on {}: {:?}", e.report.fingerprint, e.weak_duality_violations);
            }
            Ok(run.status.exit_code())
        }
        Command::RunAcceptance(a) => {
            let config = AcceptanceConfig {
                seed: a.seed,
                only: a.only,
                fault: a.inject_fault,
                caps,
            };
            let results = run_acceptance(&config);
            for v in &results.verdicts {
                eprintln!("{}", v.line());
            }
            let passed = results.all_passed();
            emit_report(&a.output.out, &Report::new("run-acceptance", &config, results))?;
            Ok(if passed { 0 } else { RunStatus::InvariantViolation.exit_code() })
        }
        Command::RunTangleLab(a) => {
            let config = TangleLabConfig {
                seed: a.seed,
                count: a.count,
                max_vertices: a.max_vertices,
                jobs: a.jobs,
                caps,
            };
            let run = run_tangle_lab(&config)?;
            emit_report(&a.output.out, &run.report)?;
            Ok(run.status.exit_code())
        }
        Command::RunTransfer(a) => {
            let config = TransferConfig {
                pairs: a.pairs,
                k: a.k,
                r: a.r,
                ell: a.ell,
                grids: a.grid,
                subdivide: a.subdivide,
            };
            let run = run_transfer(&config)?;
            emit_report(&a.output.out, &run.report)?;
            Ok(run.status.exit_code())
        }
        Command::Gen(a) => {
            let config = GenConfig {
                family: a.family,
                seed: a.seed,
                count: a.count,
                r: a.r,
                n: a.n,
                s: a.s,
                w: a.w,
                min_vertices: a.min_vertices,
                max_vertices: a.max_vertices,
                edge_probability: a.edge_probability,
                connected: a.connected,
                weighted: a.weighted,
                k: a.k,
                verify: a.verify,
                caps,
            };
            let value = run_gen(&config)?;
            emit(&a.output.out, &serde_json::to_string_pretty(&value).expect("serializable"))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
