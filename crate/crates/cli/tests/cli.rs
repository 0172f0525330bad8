//! End-to-end runs of the `diracidx` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use diracidx_cli::commands::ConstantEntry;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diracidx")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value, String) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value, stdout)
}

#[test]
fn json_output_round_trips() {
    for args in
        [&["pairs", "list"][..], &["orbit", "describe", "--pair", "e6-d5c"], &["springer", "gate", "--pair", "g2"]]
    {
        let (code, value, stdout) = json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(serde_json::to_string_pretty(&value).unwrap(), stdout.trim_end(), "{args:?}");
    }
}

#[test]
fn constant_results_round_trip_through_their_type() {
    let (code, value, _) = json(&["constants", "compute", "--pair", "f4-c3a1", "--check-points", "3"]);
    assert_eq!(code, 0);
    let entries: Vec<ConstantEntry> = serde_json::from_value(value["results"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&entries).unwrap(), value["results"]);
    let cs: Vec<String> = entries.iter().map(|e| e.result.c.to_string()).collect();
    assert_eq!(cs, ["4", "-4"]);
    assert!(entries.iter().all(|e| e.result.eval_points_used == 4 && e.passed()));
}

#[test]
fn report_for_su21_form_one() {
    let (code, v, _) = json(&["report", "--pair", "su(2,1)", "--form", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["gate"], true);
    assert_eq!(v["forms"][0]["n"], 3);
    assert_eq!(v["forms"][0]["constant"]["c"], "1");
    assert_eq!(v["forms"][0]["closed_form"], "1");
    assert!(v["forms"][0]["constant"]["verification"]["passed"].as_bool().unwrap());
}

#[test]
fn report_for_e6_hermitian_pair() {
    let (code, v, _) = json(&["report", "--pair", "e6-d5c"]);
    assert_eq!(code, 0);
    assert_eq!(v["constants"], serde_json::json!(["1", "-2", "1"]));
}

#[test]
fn report_for_excluded_pair_has_no_constants() {
    let (code, v, _) = json(&["report", "--pair", "f4-spin9"]);
    assert_eq!(code, 0);
    assert_eq!(v["gate"], false);
    assert!(v["constants"].is_null());
    assert!(v["forms"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["report", "--pair", "e9"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("g2") && err.contains("su(..)"), "{err}");
    assert_eq!(run(&["tables", "verify", "--table", "3"]).status.code(), Some(2));
    assert_eq!(run(&["constants", "compute", "--pair", "g2", "--method", "closed"]).status.code(), Some(2));
    assert_eq!(run(&["constants", "compute", "--pair", "e8-d8", "--method", "naive"]).status.code(), Some(2));
    assert_eq!(run(&["constants", "compute", "--pair", "f4-spin9"]).status.code(), Some(2));
    assert_eq!(run(&["charlab", "verify", "--pair", "g2"]).status.code(), Some(2));
    assert_eq!(run(&["orbit", "describe", "--pair", "su(2,1)", "--form", "7"]).status.code(), Some(2));
}

#[test]
fn su_methods_agree() {
    let mut seen = Vec::new();
    for method in ["dp", "naive", "shuffle", "closed"] {
        let (code, v, _) = json(&["constants", "compute", "--pair", "su(3,4)", "--method", method]);
        assert_eq!(code, 0, "{method}");
        let cs: Vec<String> =
            v["results"].as_array().unwrap().iter().map(|r| r["c"].as_str().unwrap().into()).collect();
        seen.push(cs);
    }
    assert_eq!(seen[0], ["1", "3", "3", "1"]);
    assert!(seen.iter().all(|s| *s == seen[0]));
}

fn tampered_catalog(dir: &Path) -> std::path::PathBuf {
    let text = include_str!("../../core/data/catalog.json");
    let mut v: Value = serde_json::from_str(text).unwrap();
    for e in v["exceptional"].as_array_mut().unwrap() {
        if e["id"] == "g2" {
            e["constants"] = serde_json::json!([5]);
        }
    }
    let path = dir.join("catalog.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    path
}

#[test]
fn table_two_passes_and_reports_mismatches() {
    let (code, v, _) = json(&["tables", "verify", "--table", "2"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    let status = |id: &str| rows.iter().find(|r| r["pair_id"] == id).unwrap()["status"].clone();
    assert_eq!(status("g2"), "pass");
    assert_eq!(status("e7-a7"), "pass");
    assert_eq!(status("f4-spin9"), "excluded");
    assert_eq!(status("e8-d8"), "skipped");

    let dir = tempfile::tempdir().unwrap();
    let cat = tampered_catalog(dir.path());
    let out = run(&["tables", "verify", "--table", "2", "--catalog", cat.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("g2") && l.contains("MISMATCH") && l.contains("{5}")), "{text}");
}

#[test]
fn table_one_passes() {
    let (code, v, _) = json(&["tables", "verify", "--table", "1"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    let su = rows.iter().find(|r| r["pair_id"] == "su(3,5)").unwrap();
    assert_eq!(su["real_forms"], 4);
}

#[test]
fn records_replay_and_detect_changes() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("run.json");
    let rec_s = rec.to_str().unwrap();
    let out = run(&["--record", rec_s, "constants", "compute", "--pair", "e6-d5c", "--check-points", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let record: Value = serde_json::from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    assert_eq!(record["command"], "constants compute");
    assert!(!record["inputs"].as_array().unwrap().iter().any(|a| a == "--record"));
    assert_eq!(run(&["replay", rec_s]).status.code(), Some(0));

    let mut changed = record.clone();
    changed["outputs"]["results"][1]["c"] = "2".into();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&changed).unwrap()).unwrap();
    assert_eq!(run(&["replay", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn checkpoints_resume_to_the_same_result() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, first, _) = json(&["constants", "compute", "--pair", "e7-a7", "--checkpoint", d]);
    assert_eq!(code, 0);
    assert!(dir.path().join("e7-a7-form0").join("ledger.ckpt").exists());
    let (code, second, _) = json(&["constants", "compute", "--pair", "e7-a7", "--checkpoint", d, "--resume"]);
    assert_eq!(code, 0);
    let strip = diracidx_cli::record::strip_timing;
    assert_eq!(strip(&first), strip(&second));
}

#[test]
fn thread_count_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_diracidx"))
        .args(["springer", "gate", "--pair", "su(2,2)"])
        .env("DIRACIDX_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_diracidx"))
        .args(["pairs", "list"])
        .env("DIRACIDX_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
