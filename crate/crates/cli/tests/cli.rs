use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn qm(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qm"))
        .args(args)
        .current_dir(dir)
        .env_remove("QM_LIMITS")
        .output()
        .expect("binary runs")
}

fn qm_env(dir: &Path, args: &[&str], limits: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qm"))
        .args(args)
        .current_dir(dir)
        .env("QM_LIMITS", limits)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn ratio(v: &Value) -> (i64, i64) {
    (v["value_num"].as_i64().unwrap(), v["value_den"].as_i64().unwrap())
}

fn setup() -> TempDir {
    let d = TempDir::new().unwrap();
    let files = [
        ("k22.graph", "4 4\n0 2\n0 3\n1 2\n1 3\n"),
        ("k3.graph", "3 3\n0 1\n1 2\n0 2\n"),
        ("c4.graph", "4 4\n0 1\n1 2\n2 3\n3 0\n"),
        ("k2.graph", "2 1\n0 1\n"),
        ("bad.graph", "3 2\n0 1\n"),
        ("asym.kernel", "2\n0 0.5\n0.501 0\n"),
        ("a.kernel", "2\n0.2 0.4\n0.4 0.9\n"),
        ("b.kernel", "2\n0.9 0.4\n0.4 0.2\n"),
    ];
    for (name, text) in files {
        fs::write(d.path().join(name), text).unwrap();
    }
    d
}

#[test]
fn compute_examples() {
    let d = setup();
    let p = d.path();
    let v = json(&qm(p, &["compute", "omega", "--variant", "2", "--order", "degree", "--subset", "exact", "-i", "k22.graph"]));
    assert_eq!(ratio(&v), (1, 8));
    assert_eq!(v["bound"], "exact");
    let v = json(&qm(p, &["compute", "omega-tilde", "-i", "k3.graph"]));
    assert_eq!(ratio(&v), (1, 9));
    let v = json(&qm(p, &["compute", "edit-threshold", "-i", "c4.graph", "--strategy", "exact"]));
    assert_eq!(v["distance"], 1);
    let v = json(&qm(p, &["compute", "omega", "--variant", "1", "-i", "k22.graph"]));
    assert_eq!(ratio(&v), (1, 16));
}

#[test]
fn witness_reproduces_value() {
    let d = setup();
    let p = d.path();
    qm(p, &["sample", "gnp", "--n", "9", "--p", "0.5", "--seed", "4", "-o", "g.graph"]);
    for j in ["0", "1", "2", "3"] {
        let v = json(&qm(p, &["compute", "omega", "--variant", j, "-i", "g.graph"]));
        let order: Vec<String> = v["order"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
        let at = json(&qm(p, &["compute", "omega", "--variant", j, "--at", &order.join(","), "-i", "g.graph"]));
        assert_eq!(ratio(&at), ratio(&v));
    }
}

#[test]
fn kernel_functionals() {
    let d = setup();
    let p = d.path();
    assert!(qm(p, &["convert", "--to", "kernel", "-i", "k2.graph", "-o", "k2.kernel"]).status.success());
    let atomic = json(&qm(p, &["compute", "kernel-omega", "--variant", "1", "--strategy", "exact", "-i", "k2.kernel"]));
    assert_eq!(ratio(&atomic), (1, 8));
    let refined = json(&qm(p, &["compute", "kernel-omega", "--variant", "1", "--strategy", "refine:2", "-i", "k2.kernel"]));
    assert_eq!(ratio(&refined), (1, 16));
    let cut = json(&qm(p, &["compute", "cut-norm", "-i", "a.kernel", "--other", "b.kernel"]));
    let l1 = json(&qm(p, &["compute", "l1-distance", "-i", "a.kernel", "--other", "b.kernel"]));
    assert!(cut["value"].as_f64().unwrap() <= l1["value"].as_f64().unwrap() + 1e-12);
    let perm = json(&qm(p, &["compute", "l1-distance", "-i", "a.kernel", "--other", "b.kernel", "--perm", "exact"]));
    assert!(perm["value"].as_f64().unwrap() < 1e-12);
    let goxx = json(&qm(p, &["compute", "goxx", "-i", "a.kernel"]));
    assert_eq!(goxx["bound"], "exact");
}

#[test]
fn exit_codes() {
    let d = setup();
    let p = d.path();
    assert_eq!(qm(p, &["compute", "omega", "-i", "bad.graph"]).status.code(), Some(2));
    assert_eq!(qm(p, &["compute", "omega", "-i", "missing.graph"]).status.code(), Some(2));
    assert_eq!(qm(p, &["convert", "--to", "json", "-i", "asym.kernel"]).status.code(), Some(2));
    qm(p, &["sample", "gnp", "--n", "30", "--p", "0.5", "--seed", "1", "-o", "g30.graph"]);
    assert_eq!(qm(p, &["compute", "omega", "-i", "g30.graph"]).status.code(), Some(3));
    let v = json(&qm(p, &["compute", "omega", "-i", "g30.graph", "--allow-heuristic"]));
    assert_eq!(v["bound"], "lower");
    assert_eq!(qm(p, &["verify", "nope", "--seed", "1"]).status.code(), Some(1));
    assert_eq!(qm(p, &["verify", "lb1"]).status.code(), Some(2));
    assert_eq!(qm(p, &["sample", "gnp", "--n", "5", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(qm(p, &["compute", "cut-norm", "-i", "a.kernel", "--strategy", "local_search"]).status.code(), Some(2));
}

#[test]
fn limits_from_env_and_flags() {
    let d = setup();
    let p = d.path();
    let args = ["compute", "omega", "-i", "k22.graph"];
    assert_eq!(qm_env(p, &args, "--exact-subset-limit 3").status.code(), Some(3));
    assert_eq!(qm_env(p, &args, "--exact-subset-limit=4").status.code(), Some(0));
    let with_flag = ["compute", "omega", "-i", "k22.graph", "--exact-subset-limit", "4"];
    assert_eq!(qm_env(p, &with_flag, "--exact-subset-limit 3").status.code(), Some(0));
    assert_eq!(qm(p, &["compute", "omega", "-i", "k22.graph", "--exact-order-limit", "3"]).status.code(), Some(3));
    assert_eq!(qm_env(p, &args, "--bogus 1").status.code(), Some(2));
}

#[test]
fn verify_writes_csv_and_reports_violations() {
    let d = setup();
    let p = d.path();
    let o = qm(p, &["verify", "lb1", "--trials", "50", "--seed", "7", "-o", "lb1.csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(p.join("lb1.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("suite,trial,size,check,lhs,rhs,ok"));
    assert!(lines.all(|l| l.starts_with("lb1,") && l.ends_with(",1")));
    let all = qm(p, &["verify", "all", "--trials", "5", "--seed", "7"]);
    assert_eq!(all.status.code(), Some(0));
}

#[test]
fn convert_roundtrips() {
    let d = setup();
    let p = d.path();
    assert!(qm(p, &["convert", "--to", "json", "-i", "k22.graph", "-o", "k22.json"]).status.success());
    let back = qm(p, &["convert", "--to", "text", "-i", "k22.json"]);
    assert_eq!(String::from_utf8(back.stdout).unwrap(), fs::read_to_string(p.join("k22.graph")).unwrap());
    let grid = qm(p, &["convert", "--to", "kernel", "-i", "k22.graph"]);
    assert_eq!(String::from_utf8(grid.stdout).unwrap(), "4\n0 0 1 1\n0 0 1 1\n1 1 0 0\n1 1 0 0\n");
    assert!(qm(p, &["convert", "--to", "json", "-i", "a.kernel", "-o", "a.json"]).status.success());
    let text = qm(p, &["convert", "--to", "text", "-i", "a.json"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap(), fs::read_to_string(p.join("a.kernel")).unwrap());
}

#[test]
fn sampling_is_reproducible() {
    let d = setup();
    let p = d.path();
    let run = |seed: &str| qm(p, &["sample", "gnw", "--n", "40", "--additive", "8", "--seed", seed]).stdout;
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
    let t = qm(p, &["sample", "threshold", "--n", "20", "--seed", "2", "-o", "t.graph"]);
    assert!(t.status.success());
    let v = json(&qm(p, &["compute", "is-threshold", "-i", "t.graph"]));
    assert_eq!(v["threshold"], true);
    let k = qm(p, &["sample", "kmm", "--m", "3", "--format", "json"]);
    let g: Value = serde_json::from_slice(&k.stdout).unwrap();
    assert_eq!(g["edges"].as_array().unwrap().len(), 9);
}

#[test]
fn experiments_are_deterministic_and_atomic() {
    let d = setup();
    let p = d.path();
    let args = ["experiment", "convergence", "--sizes", "6,8", "--seeds", "2", "--seed", "3", "--no-timing"];
    let a = qm(p, &args);
    let b = qm(p, &[&args[..], &["--threads", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let csv = String::from_utf8(a.stdout).unwrap();
    assert!(csv.starts_with("experiment,n,seed,metric,variant,order_strategy,subset_strategy,value,bound,runtime_ms\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 2 * 3);

    let out = PathBuf::from("kmm.csv");
    assert!(qm(p, &["experiment", "kmm-table", "-o", "kmm.csv", "--gnuplot"]).status.success());
    assert!(p.join(&out).exists() && p.join("kmm.csv.gp").exists());

    let failed = qm(p, &["experiment", "convergence", "--sizes", "30", "--seeds", "1", "--seed", "1", "--subset", "exact", "-o", "fail.csv"]);
    assert_eq!(failed.status.code(), Some(3));
    assert!(!p.join("fail.csv").exists());
    let leftovers = fs::read_dir(p).unwrap().filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with(".tmp")).count();
    assert_eq!(leftovers, 0);
}

#[test]
fn diagnostic_over_a_sequence() {
    let d = setup();
    let p = d.path();
    let mut args: Vec<String> = vec!["compute".into(), "diagnostic".into(), "--format".into(), "csv".into()];
    for n in [10, 20, 40] {
        let name = format!("t{n}.graph");
        qm(p, &["sample", "threshold", "--n", &n.to_string(), "--seed", "1", "-o", &name]);
        args.extend(["-i".into(), name]);
    }
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let o = qm(p, &args);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("index,n,omega_tilde0,omega_tilde1,edit_density,omega2_degree,flag\n"));
    assert_eq!(text.lines().count(), 4);
}
