//! Experiment driver for `coarse-menger`: duality sweeps, the tangle lab,
//! transfer constants, instance generation and the acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod error;
pub mod report;

pub use acceptance::{run_acceptance, AcceptanceConfig, AcceptanceReport, Criterion, Fault, Verdict};
pub use error::{CliError, CliResult};
pub use report::{canonical_json, Report, SCHEMA_VERSION};
