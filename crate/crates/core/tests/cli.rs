use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperspectra")).args(args).output().unwrap()
}

fn run_on(cmd: &str, file: &Path, extra: &[&str]) -> Output {
    let mut args = vec![cmd, file.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn spectrum_of_single_edge() {
    let out = run_on("spectrum", &fixture("single_edge_3.hg"), &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let q: Vec<f64> = v["signlessLaplacian"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let want = [2.0, 0.5, 0.5];
    assert!(q.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12), "{q:?}");
    assert!((v["summary"]["sQ"].as_f64().unwrap() - 1.5).abs() < 1e-12);
}

#[test]
fn spectrum_reads_json_and_stdin() {
    let out = run_on("spectrum", &fixture("k3_4.json"), &[]);
    assert_eq!(json(&out)["summary"]["qMax"].as_f64().map(|x| (x - 6.0).abs() < 1e-9), Some(true));
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperspectra"))
        .args(["spectrum", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"3 1\n1 2 3\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["n"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(run_on("spectrum", &fixture("malformed_count.hg"), &[]).status.code(), Some(2));
    assert_eq!(run_on("spectrum", &fixture("bad_vertex.hg"), &[]).status.code(), Some(3));
    let out = run_on("spectrum", &fixture("disconnected.hg"), &["--require-connected"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    assert_eq!(run_on("spectrum", &fixture("disconnected.hg"), &[]).status.code(), Some(0));
    assert_eq!(run_on("bounds", &fixture("disconnected.hg"), &[]).status.code(), Some(3));
    assert_eq!(run_on("bounds", &fixture("mixed_rank.hg"), &[]).status.code(), Some(3));
    assert_eq!(run(&["spectrum", "/no/such/file.hg"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
}

#[test]
fn bounds_allow_any_reports_inapplicable_rows() {
    let out = run_on("bounds", &fixture("disconnected.hg"), &["--allow-any"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["evaluations"].as_array().unwrap();
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| r["applicable"] == false && r["reason"] == "hypergraph is not connected"));
}

#[test]
fn bounds_on_single_edge_mark_equality() {
    let out = run_on("bounds", &fixture("single_edge_3.hg"), &["--audit"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["evaluations"].as_array().unwrap();
    for id in ["B01", "B04", "B05", "B18"] {
        let r = rows.iter().find(|r| r["boundId"] == id).unwrap();
        assert_eq!(r["equalityObserved"], true, "{id}");
        assert_eq!(r["consistent"], true, "{id}");
    }
    assert_eq!(v["assertedFailures"].as_array().unwrap().len(), 0);
    assert!(v["equalityConsistency"].as_array().unwrap().len() == 7);
}

#[test]
fn bounds_csv_and_b08_reason() {
    let out = run_on("bounds", &fixture("b08_condition_fails.hg"), &["--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "bound_id,target,assurance,applicable,reason,lhs,rhs,slack,holds,equality_expected,equality_observed,consistent"
    );
    let b08 = text.lines().find(|l| l.starts_with("B08")).unwrap();
    assert!(b08.starts_with("B08,qMaxLower,asserted,false,condition (n-1) d_max <= k m fails (18 > 9),,,,"), "{b08}");
}

#[test]
fn audit_findings_need_strict_audit_to_fail() {
    let k23 = fixture("k23.hg");
    assert_eq!(run_on("bounds", &k23, &[]).status.code(), Some(0));
    assert_eq!(run_on("bounds", &k23, &["--strict-audit"]).status.code(), Some(4));
}

#[test]
fn tolerance_flags() {
    let out = run_on("bounds", &fixture("single_edge_3.hg"), &["--tol", "1e-6"]);
    let v = json(&out);
    assert_eq!(v["tolerances"]["slack"], 1e-6);
    assert_eq!(v["tolerances"]["equality"], 1e-6);
    let v = json(&run_on("bounds", &fixture("single_edge_3.hg"), &["--tol", "1e-6", "--eq-tol", "1e-3"]));
    assert_eq!(v["tolerances"]["equality"], 1e-3);
}

#[test]
fn generate_families() {
    let out = run(&["generate", "completeUniform", "4", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    let out = run(&["generate", "singleEdge", "5"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "5 1\n1 2 3 4 5\n");
    assert_eq!(run(&["generate", "completeUniform", "2", "3"]).status.code(), Some(3));
    assert_eq!(run(&["generate", "noSuchFamily", "3"]).status.code(), Some(3));
}

#[test]
fn generate_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.hg");
    let b = dir.path().join("b.json");
    for p in [&a, &a] {
        let out = run(&["generate", "randomConnectedUniform", "6", "3", "5", "--seed", "1", "-o", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let first = std::fs::read(&a).unwrap();
    let again = run(&["generate", "randomConnectedUniform", "6", "3", "5", "--seed", "1"]).stdout;
    assert_eq!(first, again);
    run(&["generate", "randomConnectedUniform", "6", "3", "5", "--seed", "1", "-o", b.to_str().unwrap()]);
    let (va, vb) = (run_on("verify", &a, &["--json"]), run_on("verify", &b, &["--json"]));
    assert_eq!(va.status.code(), Some(0));
    assert_eq!(va.stdout, vb.stdout);
    let s = json(&run_on("spectrum", &a, &["--require-connected"]));
    assert_eq!(s["m"], 5);
}

#[test]
fn complement_command() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("c.hg");
    let out = run_on("complement", &fixture("single_edge_3.hg"), &["-o", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), "3 0\n");
    let out = run_on("complement", &fixture("b08_condition_holds.hg"), &[]);
    // C(5,3) = 10 triples minus 3 edges
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().next(), Some("5 7"));
    assert_eq!(run_on("complement", &fixture("mixed_rank.hg"), &[]).status.code(), Some(3));
}

#[test]
fn complement_refuses_huge_candidate_sets() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.hg");
    // C(40, 5) = 658008 candidate edges
    let edges: Vec<String> = (1..=36).map(|i| format!("{} {} {} {} {}", i, i + 1, i + 2, i + 3, i + 4)).collect();
    std::fs::write(&big, format!("40 36\n{}\n", edges.join("\n"))).unwrap();
    let out = run_on("complement", &big, &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource cap"));
}

#[test]
fn verify_command() {
    let out = run_on("verify", &fixture("k3_4.json"), &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("pass") || l.starts_with("skip")), "{text}");
    assert!(text.contains("naive chi agrees: 4 vs 4"));
}

#[test]
fn sweep_outputs_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let csv = |w: &str| dir.path().join(format!("s{w}.csv"));
    for w in ["1", "8"] {
        let out = run(&[
            "sweep", "--n", "3..7", "--k", "3", "--m", "1..12", "--samples", "20", "--seed", "7", "--workers", w, "-o",
            csv(w).to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(csv("1")).unwrap(), std::fs::read(csv("8")).unwrap());
    let summary: Value = serde_json::from_slice(&std::fs::read(dir.path().join("s1.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["violations"].as_array().unwrap().len(), 0);
    assert_eq!(summary["bounds"].as_array().unwrap().len(), 25);
    let b02 = &summary["bounds"][1];
    assert_eq!(b02["boundId"], "B02");
    assert!(b02["findings"].as_u64().unwrap() > 0);
}

#[test]
fn single_edge_sweep_spread_column() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("se.csv");
    let out = run(&["sweep", "--family", "single-edge", "--k", "3..12", "-o", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut rdr = text.lines().skip(1).filter(|l| l.contains(",B01,"));
    for k in 3..=12 {
        let cols: Vec<&str> = rdr.next().unwrap().split(',').collect();
        assert_eq!(cols[1], k.to_string());
        let s_q: f64 = cols[8].parse().unwrap();
        assert!((s_q - (1.0 + 1.0 / (k - 1) as f64)).abs() < 1e-9);
    }
}

#[test]
fn failed_sweep_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("none.csv");
    let out = run(&["sweep", "--n", "5..3", "-o", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}
