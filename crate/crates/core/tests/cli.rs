use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use blob_workbench::report::parse_json_lines;

const BASE: &str = "model = \"xxz\"\nboundary = \"xxz-m\"\nN = 2\nmu = 0.7\nQ = \"2,0\"\nlambda_samples = 3\n";

fn config(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("run.toml");
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blobcheck")).args(args).env_remove("BLOB_SEED").output().unwrap()
}

#[test]
fn passing_run_exits_zero_with_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), BASE);
    let out = run(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports = parse_json_lines(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(reports.iter().all(|r| r.passed && r.elapsed_ms == 0.0));
    assert!(reports.iter().any(|r| r.is_negative_control()));
}

#[test]
fn empty_suite_list_is_empty_success() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &format!("{BASE}suites = []\n"));
    let out = run(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn unattainable_tolerance_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &format!("{BASE}tolerance = 1e-20\n"));
    let out = run(&["check", "--config", cfg.to_str().unwrap(), "--suite", "ybe", "--suite", "re"]);
    assert_eq!(out.status.code(), Some(1));
    let reports = parse_json_lines(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(reports.iter().all(|r| r.suite() == "ybe" || r.suite() == "re"));
    assert!(reports.iter().filter(|r| !r.is_negative_control()).all(|r| !r.passed));
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &BASE.replace("xxz-m", "iii"));
    let out = run(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("boundary"));
    assert_eq!(run(&["check", "--config", "/nonexistent/run.toml"]).status.code(), Some(2));
    let bad_seed = Command::new(env!("CARGO_BIN_EXE_blobcheck"))
        .args(["check", "--config", config(dir.path(), BASE).to_str().unwrap()])
        .env("BLOB_SEED", "minus one")
        .output()
        .unwrap();
    assert_eq!(bad_seed.status.code(), Some(2));
    assert_eq!(run(&["check", "--config", "x", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn out_file_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), BASE);
    let target = dir.path().join("report.txt");
    let out = run(&["check", "--config", cfg.to_str().unwrap(), "--format", "summary-text", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    assert!(text.contains("ybe") && text.contains(": OK"), "{text}");
}

#[test]
fn timings_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), BASE);
    let out = run(&["check", "--config", cfg.to_str().unwrap(), "--suite", "transfer", "--timings"]);
    let reports = parse_json_lines(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(reports.iter().any(|r| r.elapsed_ms > 0.0));
}

#[test]
fn list_checks_names_every_suite() {
    let out = run(&["list-checks"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for s in ["algebra", "ybe", "re", "conditions", "transfer", "symmetry", "exchange", "duality", "spectrum"] {
        assert!(text.lines().any(|l| l.starts_with(s)), "{s}");
    }
}

#[test]
fn spectrum_csv_has_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), BASE);
    let csv = dir.path().join("s.csv");
    let out = run(&["spectrum", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("chain,index,re,im,multiplicity"));
    assert_eq!(lines.count(), 4);
}
