use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn split(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_split")).args(args).env_remove("SPLIT_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn edge_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn exact_k4() {
    let f = edge_file("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = split(&["--mode", "exact", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"][0]["k"], 2);
    assert_eq!(v["results"][0]["checker"], "pass");
}

#[test]
fn randomized_gnp() {
    let out =
        split(&["--mode", "randomized", "--family", "gnp:n=2000,p=0.5,seed=7", "--epsilon", "0.1", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json(&out)["results"][0];
    assert!(row["k"].as_u64().unwrap() >= 900);
    assert_eq!(row["checker"], "pass");
    assert!(row["branch"].is_string());
    assert!(row["trace"].is_null());
}

#[test]
fn trace_flag_embeds_the_case_trace() {
    let out = split(&["--mode", "randomized", "--family", "forest:n=500,seed=2", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let trace = &json(&out)["results"][0]["trace"];
    assert_eq!(trace["n"], 500);
    assert!(trace["branch"].is_string());
}

#[test]
fn verify_binparity() {
    let out = split(&["--mode", "verify-claims", "--claim", "binparity", "--trials", "100000", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(!verdicts.is_empty());
    assert!(verdicts.iter().all(|d| d["holds"] == true && d["claim"] == "binparity"));
}

#[test]
fn dp_and_min_deletion_modes() {
    let star = edge_file("5 4\n0 1\n0 2\n0 3\n0 4\n");
    let path = star.path().to_str().unwrap();
    let dp = json(&split(&["--mode", "dp-split", "--input", path]));
    assert_eq!(dp["results"][0]["splittable"], false);
    assert_eq!(dp["results"][0]["checker"], "none");
    let out = split(&["--mode", "min-deletion", "--input", path, "--epsilon", "0.2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["deletions"], 1);
    // ⌊2·0.05·5⌋ = 0 deletions allowed.
    let out = split(&["--mode", "min-deletion", "--input", path, "--epsilon", "0.05"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unparseable_input_exits_two_with_line() {
    let f = edge_file("3 2\n0 1\n1 two\n");
    let out = split(&["--mode", "exact", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(split(&["--mode", "nonsense"]).status.code(), Some(2));
    assert_eq!(split(&["--mode", "exact"]).status.code(), Some(2));
    assert_eq!(
        split(&["--mode", "randomized", "--family", "gnp:n=100,p=0.5", "--epsilon", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(split(&["--mode", "exact", "--family", "complete:n=30"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_rows_and_header() {
    let out = split(&["--mode", "sweep", "--family", "gnp:n=100|200|400,p=0.5,seed=1..5", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,n,seed,k,half_gap,deletions,branch,checker,ms"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 15);
    assert!(rows[0].starts_with("gnp(p=0.5),100,1,"));
    assert!(rows[14].starts_with("gnp(p=0.5),400,5,"));
    assert!(rows.iter().all(|r| r.ends_with(",pass,0")));
}

#[test]
fn sweep_small_rows_use_the_exact_solver() {
    let out = split(&["--mode", "sweep", "--family", "forest:n=6..12,seed=1|2", "--format", "json", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for row in v["results"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        let k = row["k"].as_u64().unwrap();
        assert_eq!(row["method"], "exhaustive");
        assert!(k + 1 >= n.div_ceil(2), "forest bound fails: {row}");
    }
    assert_eq!(v["aggregates"].as_array().unwrap().len(), 7);
}

#[test]
fn sweep_records_failures_in_row() {
    // n = 13 is odd and ε = 0.01 allows no deletion, so that row has no answer.
    let out = split(&["--mode", "sweep", "--family", "star:n=10|13|14", "--epsilon", "0.01", "--no-timing"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].ends_with(",pass,0"));
    assert!(rows[1].starts_with("star,13,0,") && rows[1].ends_with(",error,0"), "{}", rows[1]);
    assert!(rows[2].starts_with("star,14,"));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args =
        ["--mode", "sweep", "--family", "forest:n=300|600,seed=1..3", "--seed", "4", "--no-timing", "--format", "json"];
    let a = split(&args);
    let b = split(&args);
    assert_eq!(a.stdout, b.stdout);
    let one = split(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, one.stdout);
}

#[test]
fn env_seed_overrides_flag() {
    let run = |env: Option<&str>, seed: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_split"));
        cmd.args(["--mode", "randomized", "--family", "forest:n=400,seed=1", "--seed", seed, "--no-timing"]);
        match env {
            Some(s) => cmd.env("SPLIT_SEED", s),
            None => cmd.env_remove("SPLIT_SEED"),
        };
        json(&cmd.output().unwrap())
    };
    let flagged = run(None, "9");
    let from_env = run(Some("9"), "1");
    assert_eq!(flagged["results"], from_env["results"]);
    assert_eq!(from_env["config"]["seed"], 9);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("record.csv");
    let out = split(&["--mode", "exact", "--family", "cycle:n=6", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("source,n,edges,k,half_gap,deletions,method,branch,splittable,checker,ms\n"));
}
