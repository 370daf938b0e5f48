use std::path::Path;

use lowsum::cli::run_with;
use serde_json::Value;

const L4: &str = "4\n1 2 +1\n1 3 +1\n1 4 +1\n2 3 -1\n2 4 -1\n3 4 -1\n";
const P3: &str = "4 2\n1 2\n2 3\n";

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(
        std::iter::once("lowsum").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fixture(dir: &Path) -> (String, String) {
    let l = dir.join("l4.txt");
    let f = dir.join("p3.txt");
    std::fs::write(&l, L4).unwrap();
    std::fs::write(&f, P3).unwrap();
    (l.to_string_lossy().into_owned(), f.to_string_lossy().into_owned())
}

#[test]
fn embed_best_on_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let (l, f) = fixture(dir.path());
    let (code, out, _) = run(&["embed", "--labeling", &l, "--forest", &f]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["c_value"], 0);
    assert_eq!(v["certificates"]["delta_plus_1"], true);
    assert_eq!(v["bounds"]["delta_plus_1"], 3);
    assert!(v.get("runtime_seconds").is_none());

    let (_, out, _) = run(&[
        "embed",
        "--labeling",
        &l,
        "--forest",
        &f,
        "--algo",
        "greedy",
        "--timings",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["runtime_seconds"].is_number());
    assert!(v["trace_report"]["flagged"].as_array().unwrap().is_empty());
    assert_eq!(v["trace"].as_array().unwrap().len(), 5);
}

#[test]
fn oracle_reports_zero_mean() {
    let dir = tempfile::tempdir().unwrap();
    let (l, f) = fixture(dir.path());
    let (code, out, _) = run(&["oracle", "--labeling", &l, "--forest", &f]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 24);
    assert_eq!(v["mean"], "0");
    assert_eq!(v["min_abs"], 0);
    let (code, _, err) = run(&["oracle", "--labeling", &l, "--forest", &f, "--cap", "2"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn generators_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.txt").to_string_lossy().into_owned();
    let f = dir.path().join("f.txt").to_string_lossy().into_owned();
    let h = dir.path().join("h.txt").to_string_lossy().into_owned();
    assert_eq!(run(&["gen-labeling", "--n", "9", "--seed", "2", "--out", &l]).0, 0);
    assert_eq!(run(&["gen-forest", "--n", "9", "--kind", "star", "--out", &f]).0, 0);
    assert_eq!(run(&["gen-subgraph", "--n", "9", "--degree", "2", "--out", &h]).0, 0);
    assert!(std::fs::read_to_string(&l).unwrap().contains("seed=2"));

    let (code, out, _) = run(&["embed", "--labeling", &l, "--forest", &f, "--algo", "prop2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["c_value"].as_i64().unwrap().abs() <= 9);

    let (code, out, _) = run(&["local-search", "--labeling", &l, "--subgraph", &h, "--rule", "first"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["final_sum"].as_i64().unwrap().abs() <= 4);

    let (code, out, _) = run(&[
        "verify",
        "--labeling",
        &l,
        "--forest",
        &f,
        "--checks",
        "recurrence,formula",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all_passed"], true);
}

#[test]
fn bench_writes_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"n": [6, 8], "kinds": ["path"], "algorithms": ["greedy"]}"#).unwrap();
    let out = dir.path().join("out");
    let (code, stdout, _) = run(&[
        "bench",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.starts_with("2 rows written"));
    let csv = std::fs::read_to_string(out.join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(out.join("summary.json").exists());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["gen-labeling", "--n", "6"]).0, 1);
    assert_eq!(run(&["gen-forest", "--n", "5", "--kind", "perfect_matching"]).0, 1);
    assert_eq!(
        run(&["embed", "--labeling", "/nonexistent", "--forest", "/nonexistent"]).0,
        1
    );
    assert_eq!(run(&["embed"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["gen-forest", "--n", "5", "--kind", "cycle"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("embed"));
}
