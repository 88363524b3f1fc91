//! Runs every acceptance criterion and prints one pass/fail line each.

use coarse_menger_cli::{run_acceptance, AcceptanceConfig, Criterion, Fault};

#[test]
fn all_criteria_pass() {
    let report = run_acceptance(&AcceptanceConfig::default());
    for v in &report.verdicts {
        println!("{}", v.line());
    }
    for (name, ms) in &report.timing_ms {
        println!("       {name:<17} {ms} ms");
    }
    assert_eq!(report.verdicts.len(), 12);
    let failed: Vec<&str> = report.verdicts.iter().filter(|v| !v.passed).map(|v| v.name.as_str()).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn injected_faults_are_caught() {
    for (fault, criterion) in [
        (Fault::PackingOffByOne, Criterion::Menger),
        (Fault::DropHittingVertex, Criterion::Gallai),
    ] {
        let report = run_acceptance(&AcceptanceConfig {
            only: vec![criterion],
            fault: Some(fault),
            ..AcceptanceConfig::default()
        });
        let v = report.verdict(criterion).unwrap();
        println!("{fault:?}: {}", v.line());
        assert!(!v.passed, "{fault:?} went unnoticed");
    }
}

#[test]
fn subset_runs_only_what_was_asked() {
    let report = run_acceptance(&AcceptanceConfig {
        only: vec![Criterion::Constants, Criterion::GridLowerBound],
        ..AcceptanceConfig::default()
    });
    let ids: Vec<u8> = report.verdicts.iter().map(|v| v.id).collect();
    assert_eq!(ids, vec![3, 8]);
    assert!(report.all_passed());
}
