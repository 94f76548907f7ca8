//! End-to-end tests of the `regpart` binary: the exit-code contract, the
//! streamed table format, the reproduce targets, and cache behavior.

use std::path::Path;
use std::process::{Command, Output};

fn regpart(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regpart"))
        .args(args)
        .env("REGPART_CACHE", cache)
        .output()
        .expect("spawn regpart")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn table_streams_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = regpart(dir.path(), &["table", "--k", "2", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().last().unwrap(), "10 10");

    let out = regpart(dir.path(), &["table", "--k", "inf", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().last().unwrap(), "8 22");

    let out = regpart(dir.path(), &["table", "--k", "2", "--n-max", "6", "--format", "csv"]);
    assert_eq!(stdout(&out).lines().last().unwrap(), "6,4");
}

#[test]
fn invalid_k_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = regpart(dir.path(), &["table", "--k", "1", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = regpart(dir.path(), &["table", "--k", "x", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_targets_all_match() {
    let dir = tempfile::tempdir().unwrap();
    for which in ["theorem1", "table1", "table2", "table3", "thresholds"] {
        let out = regpart(dir.path(), &["reproduce", which]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "reproduce {which}: {}\n{}",
            stdout(&out),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(stderr(&out).contains("match"), "reproduce {which} missing status line");
    }
}

#[test]
fn verify_bo_single_and_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = regpart(dir.path(), &["verify", "bo", "--k", "4", "--sum-bound", "60"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = regpart(
        dir.path(),
        &["verify", "bo", "--k", "10..14", "--sum-bound", "150"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // Stabilization scans start at k = 10.
    let out = regpart(
        dir.path(),
        &["verify", "bo", "--k", "8..14", "--sum-bound", "150"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_logconc_range_and_single() {
    let dir = tempfile::tempdir().unwrap();
    let out = regpart(
        dir.path(),
        &["verify", "logconc", "--k", "30..34", "--n-max", "120"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = regpart(
        dir.path(),
        &["verify", "logconc", "--k", "3", "--n-max", "100", "--format", "json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["estimated_N_k"], 58);
}

#[test]
fn verify_bounds_smoke() {
    let dir = tempfile::tempdir().unwrap();
    let out = regpart(dir.path(), &["verify", "bounds", "--n-max", "300", "--format", "json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}\n{}",
        stdout(&out),
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert!(checks.contains(&"g_bound"));
    assert!(checks.contains(&"p_lower_bound_strict"));
    assert!(checks.contains(&"p_lower_bound_floored"));
    assert!(checks.contains(&"final_expression_sign"));
    assert!(checks.contains(&"final_expression_scan"));
    assert!(v.as_array().unwrap().iter().all(|r| r["result"] == "pass"));
}

#[test]
fn verify_campaign_scaled() {
    let dir = tempfile::tempdir().unwrap();
    let out = regpart(
        dir.path(),
        &["verify", "campaign", "--n0", "120", "--k-max", "12"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stderr(&out).contains("campaign ok"));
}

#[test]
fn corrupted_cache_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = regpart(dir.path(), &["table", "--k", "2", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let cached = dir.path().join("pk_2_10.rpkt");
    assert!(cached.exists());
    std::fs::write(&cached, "RPKT 1\nk=2 nmax=10\nnot-a-number\n").unwrap();
    let out = regpart(dir.path(), &["table", "--k", "2", "--n-max", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reproduce_catches_poisoned_values() {
    // A cache file that parses fine but holds a wrong value must surface as
    // a mismatch (exit 1), not silently pass: p(9) = 30 is what makes (2, 7)
    // an equality pair, so bumping it flips the classification.
    let dir = tempfile::tempdir().unwrap();
    let out = regpart(dir.path(), &["reproduce", "theorem1"]);
    assert_eq!(out.status.code(), Some(0));

    let cached = dir.path().join("pk_inf_200.rpkt");
    let text = std::fs::read_to_string(&cached).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    assert_eq!(lines[2 + 9], "30");
    lines[2 + 9] = "31".to_string();
    std::fs::write(&cached, lines.join("\n") + "\n").unwrap();

    let out = regpart(dir.path(), &["reproduce", "theorem1"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("MISMATCH"));
}

#[test]
fn warm_cache_reproduces_output_without_rebuilding() {
    let dir = tempfile::tempdir().unwrap();
    let cold = regpart(dir.path(), &["table", "--k", "7", "--n-max", "400"]);
    assert_eq!(cold.status.code(), Some(0));
    let cached = dir.path().join("pk_7_400.rpkt");
    let mtime = std::fs::metadata(&cached).unwrap().modified().unwrap();

    let warm = regpart(dir.path(), &["table", "--k", "7", "--n-max", "400"]);
    assert_eq!(warm.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(
        mtime,
        std::fs::metadata(&cached).unwrap().modified().unwrap(),
        "cache file was rewritten on a warm run"
    );
}

#[test]
fn exception_report_json_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = regpart(
        dir.path(),
        &["verify", "bo", "--k", "2", "--sum-bound", "60", "--format", "json"],
    );
    assert_eq!(out.status.code(), Some(0));
    // --format json emits nothing but the payload on stdout
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rep = &v[0];
    assert_eq!(rep["k"], 2);
    assert_eq!(rep["search_bound"], 60);
    assert_eq!(rep["infinite_families"][0]["a0"], 2);
    assert_eq!(rep["infinite_families"][0]["b_from"], 2);
    assert_eq!(rep["infinite_families"][0]["sign"], "negative");
    assert_eq!(rep["infinite_families"][0]["verified_to"], 58);
}
