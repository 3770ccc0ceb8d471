use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use arcpack::catalog::{bidirected_triangle, cycle3, path3};
use arcpack::Digraph;
use serde_json::Value;
use tempfile::TempDir;

fn arcpack(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcpack"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, d: Digraph| fs::write(dir.path().join(name), d.to_text()).unwrap();
    write("k3bi.dg", bidirected_triangle());
    write("c3.dg", cycle3());
    write("path.dg", path3());
    fs::write(dir.path().join("one-clause.cnf"), "p cnf 3 1\n1 2 3 0\n").unwrap();
    dir
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn pack_equivalence_on_bidirected_triangle() {
    let dir = setup();
    let out = arcpack(dir.path(), &["pack", "equivalence", "k3bi.dg"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["branchings"].as_array().unwrap().len(), 2);
    assert!(v["pipeline-trace"]["missing_arcs"].is_array());
}

#[test]
fn pack_trees_on_cycle_gives_tutte() {
    let dir = setup();
    let out = arcpack(dir.path(), &["pack", "trees", "-k", "2", "c3.dg"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["kind"], "tutte");
    assert!(!out.stderr.is_empty());
}

#[test]
fn pack_branchings_violation() {
    let dir = setup();
    let out = arcpack(
        dir.path(),
        &["pack", "branchings", "-k", "1", "--roots", "1:1", "path.dg"],
    );
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["kind"], "rootvector-violation");
    assert_eq!(v["X"], serde_json::json!([0]));
}

#[test]
fn pack_branchings_in_orientation() {
    let dir = setup();
    let out = arcpack(
        dir.path(),
        &[
            "pack",
            "branchings",
            "-k",
            "2",
            "--roots",
            "0:1,2:1",
            "--in",
            "k3bi.dg",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["orientation"], "in");
}

#[test]
fn pack_mixed() {
    let dir = setup();
    let out = arcpack(dir.path(), &["pack", "mixed", "-l", "1", "k3bi.dg"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["kind"], "mixed");
    assert_eq!(v["trees"].as_array().unwrap().len(), 1);
}

#[test]
fn every_pack_certificate_verifies() {
    let dir = setup();
    let runs: [&[&str]; 5] = [
        &["pack", "equivalence", "k3bi.dg"],
        &["pack", "trees", "-k", "2", "c3.dg"],
        &["pack", "trees", "-k", "2", "k3bi.dg"],
        &["pack", "mixed", "-l", "1", "k3bi.dg"],
        &["pack", "branchings", "-k", "1", "--roots", "1:1", "path.dg"],
    ];
    for args in runs {
        let out = arcpack(dir.path(), args);
        let input = args.last().unwrap();
        fs::write(dir.path().join("cert.json"), &out.stdout).unwrap();
        let checked = arcpack(dir.path(), &["verify", "cert.json", input]);
        assert_eq!(
            code(&checked),
            0,
            "{args:?}: {}",
            String::from_utf8_lossy(&checked.stderr)
        );
    }
}

#[test]
fn parse_errors_report_the_line() {
    let dir = setup();
    fs::write(dir.path().join("bad.dg"), "3 2\n0 1\n1 x\n").unwrap();
    let out = arcpack(dir.path(), &["pack", "trees", "-k", "1", "bad.dg"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_error_exits_two() {
    let dir = setup();
    let out = arcpack(dir.path(), &["pack", "branchings", "-k", "1", "path.dg"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

fn reduce_stats(dir: &Path, args: &[&str]) -> Value {
    let out = arcpack(dir, args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)
}

#[test]
fn reduce_sat_one_clause() {
    let dir = setup();
    let v = reduce_stats(dir.path(), &["reduce", "sat", "one-clause.cnf"]);
    assert_eq!(v["vertices"], 22);
    assert_eq!(v["arcs"], 44);
    assert_eq!(v["regular_degree"], 2);
    let sidecar: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("one-clause.sat.json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["schema"], "1");
    assert_eq!(sidecar["literal_map"].as_array().unwrap().len(), 1);
}

#[test]
fn reduce_k_expand() {
    let dir = setup();
    let v = reduce_stats(dir.path(), &["reduce", "k-expand", "-k", "3", "k3bi.dg"]);
    assert_eq!(
        (v["vertices"].as_u64(), v["arcs"].as_u64()),
        (Some(12), Some(36))
    );
    assert_eq!(v["regular_degree"], 3);
}

#[test]
fn reduce_ham_inout_is_two_regular() {
    let dir = setup();
    for variant in ["same", "distinct"] {
        let v = reduce_stats(
            dir.path(),
            &[
                "reduce",
                "ham-inout",
                "--vertex",
                "0",
                "--variant",
                variant,
                "k3bi.dg",
            ],
        );
        assert_eq!(v["regular"], true);
        assert_eq!(v["regular_degree"], 2);
    }
}

#[test]
fn reduce_rejects_bad_host() {
    let dir = setup();
    let out = arcpack(
        dir.path(),
        &["reduce", "ham-path", "--vertex", "0", "c3.dg"],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn reduce_outputs_round_trip() {
    let dir = setup();
    let runs: [(&[&str], &str); 5] = [
        (&["reduce", "sat", "one-clause.cnf", "-o", "a.dg"], "a.dg"),
        (
            &["reduce", "sat-cycle", "one-clause.cnf", "-o", "b.dg"],
            "b.dg",
        ),
        (
            &[
                "reduce", "ham-path", "--vertex", "1", "k3bi.dg", "-o", "c.dg",
            ],
            "c.dg",
        ),
        (
            &[
                "reduce",
                "ham-inout",
                "--vertex",
                "2",
                "k3bi.dg",
                "-o",
                "d.dg",
            ],
            "d.dg",
        ),
        (
            &["reduce", "k-expand", "-k", "4", "k3bi.dg", "-o", "e.dg"],
            "e.dg",
        ),
    ];
    for (args, file) in runs {
        let v = reduce_stats(dir.path(), args);
        let text = fs::read_to_string(dir.path().join(file)).unwrap();
        let d = Digraph::parse_text(&text).unwrap();
        assert_eq!(d.to_text(), text);
        assert_eq!(v["vertices"].as_u64(), Some(d.vertex_count() as u64));
        assert_eq!(v["arcs"].as_u64(), Some(d.arc_count() as u64));
        assert!(dir
            .path()
            .join(PathBuf::from(file).with_extension("json"))
            .exists());
    }
}

#[test]
fn oracle_ham_pair_cycles() {
    let dir = setup();
    let out = arcpack(
        dir.path(),
        &["oracle", "ham-pair", "--mode", "cycles", "k3bi.dg"],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["pair"].as_array().unwrap().len(), 2);
}

#[test]
fn oracle_p1_on_reduced_satisfiable_instance() {
    let dir = setup();
    reduce_stats(
        dir.path(),
        &["reduce", "sat", "one-clause.cnf", "-o", "reduced.dg"],
    );
    let sidecar: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("reduced.json")).unwrap())
            .unwrap();
    let (s, t) = (sidecar["s"].to_string(), sidecar["t"].to_string());
    let out = arcpack(
        dir.path(),
        &["oracle", "p1", "-s", &s, "-t", &t, "reduced.dg"],
    );
    assert_eq!(code(&out), 0);
    fs::write(dir.path().join("p1.json"), &out.stdout).unwrap();
    assert_eq!(
        code(&arcpack(dir.path(), &["verify", "p1.json", "reduced.dg"])),
        0
    );
}

#[test]
fn oracle_inout_pair_on_cycle_is_no() {
    let dir = setup();
    let out = arcpack(dir.path(), &["oracle", "inout-pair", "c3.dg"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["kind"], "exhausted");
    fs::write(dir.path().join("no.json"), &out.stdout).unwrap();
    assert_eq!(
        code(&arcpack(dir.path(), &["verify", "no.json", "c3.dg"])),
        0
    );
}

#[test]
fn oracle_budget_refusal_exits_three() {
    let dir = setup();
    let out = arcpack(
        dir.path(),
        &["oracle", "--max-vertices", "2", "trees", "-k", "1", "c3.dg"],
    );
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
}

#[test]
fn oracle_sat_and_counterexample() {
    let dir = setup();
    let out = arcpack(dir.path(), &["oracle", "sat", "one-clause.cnf"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["kind"], "assignment");
    let out = arcpack(dir.path(), &["oracle", "counterexample", "--max-n", "4"]);
    assert_eq!(code(&out), 0);
    fs::write(dir.path().join("ce.json"), &out.stdout).unwrap();
    assert_eq!(code(&arcpack(dir.path(), &["verify", "ce.json"])), 0);
}

#[test]
fn verify_trees_then_corrupt() {
    let dir = setup();
    let out = arcpack(dir.path(), &["pack", "trees", "-k", "2", "k3bi.dg"]);
    assert_eq!(code(&out), 0);
    let mut v = json(&out);
    fs::write(dir.path().join("good.json"), v.to_string()).unwrap();
    assert_eq!(
        code(&arcpack(dir.path(), &["verify", "good.json", "k3bi.dg"])),
        0
    );

    // move one arc of the second tree onto the first tree's arc
    let stolen = v["trees"][0][0].clone();
    v["trees"][1][0] = stolen;
    fs::write(dir.path().join("bad.json"), v.to_string()).unwrap();
    let out = arcpack(dir.path(), &["verify", "bad.json", "k3bi.dg"]);
    assert_eq!(code(&out), 2);
    assert!(!String::from_utf8_lossy(&out.stderr).trim().is_empty());
}

#[test]
fn verify_tutte_certificate() {
    let dir = setup();
    let out = arcpack(dir.path(), &["pack", "trees", "-k", "2", "c3.dg"]);
    fs::write(dir.path().join("tutte.json"), &out.stdout).unwrap();
    assert_eq!(
        code(&arcpack(dir.path(), &["verify", "tutte.json", "c3.dg"])),
        0
    );
}

#[test]
fn verify_unknown_kind_exits_two() {
    let dir = setup();
    fs::write(
        dir.path().join("x.json"),
        r#"{"schema":"1","kind":"nonsense"}"#,
    )
    .unwrap();
    assert_eq!(
        code(&arcpack(dir.path(), &["verify", "x.json", "c3.dg"])),
        2
    );
}

#[test]
fn export_dot_labels_arcs() {
    let dir = setup();
    let out = arcpack(dir.path(), &["export-dot", "c3.dg"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("digraph"));
}
