use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fair-radii")).args(args).current_dir(dir).output().unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

const COLOCATED_PAIRS: &str = r#"{"n": 4, "groups": [1, 2, 1, 2],
  "coords": [[0.0, 0.0], [0.0, 0.0], [10.0, 0.0], [10.0, 0.0]]}"#;

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.json", "b.json", "a.csv", "b.csv"] {
        let out = cli(&["gen", "--seed", "7", "--n", "6", "--ell", "2", "--out", name], dir.path());
        assert!(out.status.success());
    }
    let read = |n: &str| fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("a.json"), read("b.json"));
    assert_eq!(read("a.csv"), read("b.csv"));
    let inst = json(&dir.path().join("a.json"));
    assert_eq!(inst["n"], 6);
}

#[test]
fn cluster_and_oracle_agree_on_colocated_pairs() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("pairs.json"), COLOCATED_PAIRS).unwrap();
    for solver in ["exact", "primal-dual"] {
        let out = cli(
            &["cluster", "--input", "pairs.json", "--t", "1", "--k", "2", "--solver", solver, "--out", "c.json"],
            dir.path(),
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let c = json(&dir.path().join("c.json"));
        assert_eq!(c["cost"], 0.0);
        assert_eq!(c["fair"], true);
        assert_eq!(c["solver"], solver);
    }
    let out = cli(&["oracle", "--input", "pairs.json", "--t", "1", "--k", "2", "--out", "o.json"], dir.path());
    assert!(out.status.success());
    assert_eq!(json(&dir.path().join("o.json"))["cost"], 0.0);
    let out = cli(&["diagnose", "--input", "pairs.json", "--t", "1", "--k", "2", "--out", "d.json"], dir.path());
    assert!(out.status.success());
    let d = json(&dir.path().join("d.json"));
    assert_eq!(d["instance_id"], "pairs");
    assert_eq!(d["violations"], Value::Array(vec![]));
}

#[test]
fn balanced_flag_and_three_groups() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["gen", "--seed", "3", "--n", "6", "--ell", "3", "--out", "tri.json"], dir.path());
    assert!(out.status.success());
    let out = cli(&["cluster", "--input", "tri.json", "--k", "2", "--ell", "3", "--out", "c.json"], dir.path());
    assert!(out.status.success());
    assert_eq!(json(&dir.path().join("c.json"))["fair"], true);
    let out = cli(&["cluster", "--input", "tri.json", "--k", "2", "--ell", "2", "--out", "c.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = cli(&["cluster", "--input", "tri.json", "--t", "2", "--k", "2", "--out", "c.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("lop.json"),
        r#"{"n": 4, "groups": [1, 2, 2, 2], "coords": [[0, 0], [1, 0], [2, 0], [3, 0]]}"#,
    )
    .unwrap();
    for cmd in ["cluster", "oracle"] {
        let out = cli(&[cmd, "--input", "lop.json", "--t", "2", "--k", "2", "--out", "x.json"], dir.path());
        assert_eq!(out.status.code(), Some(1));
        assert_eq!(stderr_json(&out)["error"], "infeasible");
    }
    let out = cli(&["cluster", "--input", "lop.json", "--t", "1.5", "--k", "2", "--out", "x.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "non_integral_balance");
    let out = cli(&["cluster", "--input", "missing.json", "--k", "2", "--out", "x.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = cli(&["cluster", "--k", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");
    let out = cli(&["cluster", "--input", "lop.json", "--t", "3", "--k", "2", "--solver", "magic", "--out", "x.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_ratios_within_stated_ceiling() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["bench", "--trials", "200", "--n-max", "10", "--seed", "11", "--out", "bench.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut reader = csv::Reader::from_path(dir.path().join("bench.csv")).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>().join(","),
        "instance_id,n,ell,t,k,alg_cost,opt_cost,ratio,fair,dcs_weight,lemma5,lemma6,switch_bound,runtime_ms"
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 200);
    for row in &rows {
        if !row[7].is_empty() {
            assert!(row[7].parse::<f64>().unwrap() <= 144.5, "{row:?}");
        } else {
            assert_eq!(&row[5], "0.0");
        }
        assert_eq!(&row[8], "true");
        assert_eq!(&row[12], "true");
    }
    let summary = json(&dir.path().join("bench.summary.json"));
    assert_eq!(summary["fair"], 200);
    assert!((summary["stated_bound"].as_f64().unwrap() - 48.0 * 3.504 * 3.0).abs() < 1e-9);
}

#[test]
fn bench_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["x.csv", "y.csv"] {
        let out = cli(
            &["bench", "--trials", "40", "--n-max", "8", "--seed", "5", "--omit-runtime", "--out", name],
            dir.path(),
        );
        assert!(out.status.success());
    }
    let read = |n: &str| fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("x.csv"), read("y.csv"));
    assert_eq!(read("x.summary.json"), read("y.summary.json"));
}
