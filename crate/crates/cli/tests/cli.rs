use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coarse-menger"))
        .args(args)
        .env_remove("COARSE_MENGER_CAP")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coarse-menger-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn duality_on_a_grid_writes_json_and_csv() {
    let out = scratch("grid.json");
    let o = bin(&["run-duality", "--grid", "3x9", "--r", "1,3", "--beta", "0,1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["config"]["r"], serde_json::json!([1.0, 3.0]));
    let cells = &report["results"][0]["report"];
    assert_eq!(cells["packing_by_r"][0]["size"], 3);
    assert_eq!(cells["packing_by_r"][1]["size"], 1);
    assert_eq!(cells["cover_by_radius"][0]["balls"], 3);
    assert_eq!(cells["cover_by_radius"][1]["balls"], 1);
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert!(csv.starts_with("fingerprint,table,threshold,value,status\n"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn malformed_input_exits_one() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "[{\"family\": \"x\",\n  \"graph\": 3").unwrap();
    let o = bin(&["run-duality", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(bin(&["run-duality", "--grid", "3by9"]).status.code(), Some(1));
    assert_eq!(bin(&["run-acceptance", "--only", "nonsense"]).status.code(), Some(1));
    assert_eq!(bin(&["run-duality", "--file", "/nonexistent/instances.json"]).status.code(), Some(1));
}

#[test]
fn empty_instance_file_gives_an_empty_report() {
    let empty = scratch("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let o = bin(&["run-duality", "--file", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["results"], serde_json::json!([]));
}

#[test]
fn strict_capacity_exits_three() {
    let run = |strict: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_coarse-menger"));
        cmd.args(["run-duality", "--grid", "3x9", "--r", "1,3"]);
        if strict {
            cmd.arg("--strict");
        }
        cmd.env("COARSE_MENGER_CAP", "path_vertices=4,search_nodes=1").output().unwrap()
    };
    assert_eq!(run(false).status.code(), Some(0));
    assert_eq!(run(true).status.code(), Some(3));
}

#[test]
fn generated_instances_feed_the_duality_sweep() {
    let file = scratch("lower.json");
    let o = bin(&["gen", "--family", "lower-bound", "--r", "3", "--n", "9", "--verify", "--out", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let specs: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert!(specs[0]["annotations"].as_array().unwrap().iter().all(|a| a["verified"] == true));
    let o = bin(&["run-duality", "--file", file.to_str().unwrap(), "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["results"][0]["report"]["packing_by_r"][0]["size"], 1);
}

#[test]
fn acceptance_subset_and_fault() {
    let o = bin(&["run-acceptance", "--only", "constants,3"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = String::from_utf8_lossy(&o.stderr);
    assert_eq!(lines.lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
    let o = bin(&["run-acceptance", "--only", "menger", "--inject-fault", "packing-off-by-one"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tangle_lab_and_transfer() {
    let o = bin(&["run-tangle-lab", "--count", "20", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["results"].as_array().unwrap().len(), 20);
    let o = bin(&["run-transfer", "--pairs", "2:1", "--grid", "3x3"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["results"]["pairs"][0]["c1"], 39.0);
    assert_eq!(report["results"]["subdivisions"][0]["verdict"]["holds"], true);
}

#[test]
fn same_seed_same_canonical_report() {
    let run = || {
        let o = bin(&["run-acceptance", "--seed", "7", "--only", "menger,tree-helly"]);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        coarse_menger_cli::canonical_json(&v)
    };
    assert_eq!(run(), run());
}
