//! Black-box tests of the `shiftlab` binary: exit codes, report files,
//! and byte-for-byte deterministic output.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn digit_listing_exits_zero() {
    let out = run(&["beta", "--beta", "golden", "--digits", "16"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("11"), "digit stream missing: {text}");
}

#[test]
fn failed_condition_exits_one() {
    let out = run(&["verify", "--system", "sgap:set=1,2", "--conditions", "III"]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"), "no failure verdict in: {text}");
}

#[test]
fn bad_system_spec_exits_two() {
    let out = run(&["verify", "--system", "wedge:foo"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_exits_two() {
    let out = run(&["beta", "--beta", "golden", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.txt");
    fs::write(&gens, "0\n100\n").unwrap();
    let out = run(&[
        "coded",
        "--generators",
        gens.to_str().unwrap(),
        "--enumerate",
        "12",
        "--budget",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn identical_invocations_emit_identical_bytes() {
    let args = ["verify", "--system", "beta:golden", "--conditions", "I,cover", "--depth", "8"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), second.status.code());
    assert_eq!(first.stdout, second.stdout, "stdout differs between runs");
}

#[test]
fn report_file_is_valid_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "verify",
        "--system",
        "beta:golden",
        "--conditions",
        "I,II,cover",
        "--depth",
        "12",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["tool"], "shiftlab");
    let records = value["records"].as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r["verdict"] == "pass" || r["verdict"] == "info"));
}

#[test]
fn csv_report_has_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = run(&[
        "verify",
        "--system",
        "sgap:set=1,2",
        "--conditions",
        "cover",
        "--report",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,verdict,details"));
    assert!(lines.next().is_some());
}

#[test]
fn cache_round_trip_is_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap().to_string();
    let args = ["beta", "--beta", "golden", "--enumerate", "18", "--cache", &cache];
    let cold = run(&args);
    assert_eq!(cold.status.code(), Some(0));
    assert!(dir.path().join("layers.tsv").exists(), "cache file not written");
    let warm = run(&args);
    assert_eq!(warm.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout, "cached run prints different counts");
}

#[test]
fn reproduce_scenario_passes() {
    let out = run(&["reproduce", "--id", "beta-digits"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"), "unexpected failure: {text}");
}
