use std::process::{Command, Output};

use parity_blocks::posets::PosetPartition;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parity-blocks"))
        .args(args)
        .env_remove("PARITY_BLOCKS_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bin(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const SYMBOL: &str = "(16 14 13 12 10 4 3 1 / 17 14 12 11 8 6 1 0)";

#[test]
fn count_modes() {
    assert_eq!(stdout(&["count", "--n", "15", "--d", "3", "--m", "2", "--sign", "plus"]), "3\n");
    let json: Value = serde_json::from_str(&stdout(&[
        "--format", "json", "count", "--n", "15", "--d", "3", "--m", "2", "--sign", "plus",
    ]))
    .unwrap();
    assert_eq!(json["count"], 3);
    assert_eq!(json["mode"], "exact");
    // a^+_1(n) = p(n) - p(n-1): p(10) - p(9) = 42 - 30
    assert_eq!(stdout(&["count", "--n", "10", "--m", "1", "--sign", "plus"]), "12\n");
    let csv = stdout(&["--format", "csv", "count", "--n", "10", "--d", "2", "--sign", "minus"]);
    assert!(csv.starts_with("n,d,m,sign,mode,count\n"));
}

#[test]
fn list_matches_count() {
    let text = stdout(&["list", "--n", "15", "--d", "3", "--m", "2", "--sign", "plus"]);
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("(3 | 2 1 / 5 | 1 0)"));
    for (n, d, m) in [(20, 3, 2), (18, 2, 1), (24, 4, 3)] {
        for sign in ["plus", "minus"] {
            let (n, d, m) = (n.to_string(), d.to_string(), m.to_string());
            let args = ["--format", "json", "list", "--n", &n, "--d", &d, "--m", &m, "--sign", sign];
            let listed: Vec<Value> = serde_json::from_str(&stdout(&args)).unwrap();
            let count = stdout(&["count", "--n", &n, "--d", &d, "--m", &m, "--sign", sign]);
            assert_eq!(listed.len().to_string(), count.trim());
        }
    }
}

#[test]
fn empty_list_is_an_empty_array() {
    let out = stdout(&["--format", "json", "list", "--n", "1", "--d", "3", "--m", "2", "--sign", "plus"]);
    assert_eq!(out.trim(), "[]");
}

#[test]
fn biject_trace_and_invert() {
    let trace: Vec<Value> = serde_json::from_str(&stdout(&["--format", "json", "biject", SYMBOL])).unwrap();
    let stages: Vec<&str> = trace.iter().map(|s| s["stage"].as_str().unwrap()).collect();
    assert_eq!(stages, ["lambda", "mu", "mu_hat", "gamma", "pi"]);
    let weights: Vec<u64> = trace.iter().map(|s| s["weight"].as_u64().unwrap()).collect();
    assert_eq!(weights, [150, 86, 86, 86, 65]);

    let pi = &trace[4];
    let pi_json = serde_json::json!({"beta": pi["beta"], "rows": pi["rows"]}).to_string();
    let parsed: PosetPartition = serde_json::from_str(&pi_json).unwrap();
    assert_eq!(parsed.weight(), 65);
    let lambda: Value = serde_json::from_str(&stdout(&[
        "--format", "json", "biject", "--invert", "--sign", "plus", &pi_json,
    ]))
    .unwrap();
    assert_eq!(lambda["top"], trace[0]["top"]);
    assert_eq!(lambda["bottom"], trace[0]["bottom"]);
    let text = stdout(&["biject", "--invert", "--sign", "plus", &pi_json]);
    assert_eq!(text.trim(), "(16 14 | 13 12 10 | 4 | 3 1 / 17 14 | 12 11 8 | 6 | 1 0)");
}

#[test]
fn biject_rejects_wrong_sign() {
    assert_eq!(bin(&["biject", "--sign", "minus", SYMBOL]).status.code(), Some(2));
}

#[test]
fn series_output() {
    assert_eq!(stdout(&["series", "--target", "qbinomial", "--n", "4", "--k", "2"]).trim(), "1,1,2,1,1");
    assert_eq!(
        stdout(&["series", "--target", "euler-inverse", "--precision", "6"]).trim(),
        "1,1,2,3,5,7,11"
    );
    let alias = stdout(&["series", "--target", "thm-main", "--d", "3", "--m", "2", "--sign", "plus", "--precision", "20"]);
    let named = stdout(&["series", "--target", "blocks-columns", "--d", "3", "--m", "2", "--sign", "plus", "--precision", "20"]);
    assert_eq!(alias, named);
    let coeffs: Vec<u64> = named.trim().split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(coeffs.len(), 21);
    assert_eq!(coeffs[15], 3);
}

#[test]
fn verify_passes_and_summarises() {
    let out = stdout(&["--format", "json", "--no-timing", "verify", "--targets", "blocks,columns", "--m", "2", "--d", "2"]);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["total"].as_u64().unwrap() as usize, lines.len() - 1);
    assert!(lines[..lines.len() - 1].iter().all(|r| r["status"] == "pass" && r.get("elapsed_ms").is_none()));
}

#[test]
fn verify_output_is_stable_across_job_counts() {
    let run = |jobs: &str| {
        stdout(&["--format", "json", "--no-timing", "--jobs", jobs, "verify", "--targets", "blocks-columns,vmr-ballot,extension-maj"])
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["count", "--n", "3", "--d", "1", "--m", "2", "--sign", "plus"][..],
        &["count", "--n", "3", "--sign", "plus"],
        &["verify", "--targets", "no-such-target"],
        &["series", "--target", "blocks-columns", "--d", "2", "--m", "3", "--sign", "plus"],
        &["biject", "(3 1 / 2)"],
        &["frobnicate"],
    ] {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn jobs_from_environment() {
    let bad = Command::new(env!("CARGO_BIN_EXE_parity-blocks"))
        .args(["verify", "--targets", "blocks"])
        .env("PARITY_BLOCKS_JOBS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
