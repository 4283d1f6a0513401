use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critgroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critgroup"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn f(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn critgroup_simple_example() {
    let o = run(&[
        "critgroup",
        &f("simple.graph.json"),
        &f("simple.structure.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("invariant factors: 1,1,1,1,3,3"), "{text}");
    assert!(text.contains("order: 9"));
    assert!(text.contains("SNF diagonal: 1,1,1,1,3,3,0"));
}

#[test]
fn critgroup_laplacian_triangle_json() {
    let o = run(&[
        "critgroup",
        "--laplacian",
        &f("triangle.graph.json"),
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["snf_diagonal"], serde_json::json!([1, 3, 0]));
    assert_eq!(v["group"], "Z/3");
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let o = run(&["critgroup", "--laplacian", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    let o = run(&["critgroup", "--laplacian", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_structure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("s.json");
    std::fs::write(
        &bad,
        r#"{"d": [3, 3, 1, 4, 2, 2, 3], "r": [1, 1, 2, 1, 1, 1, 1]}"#,
    )
    .unwrap();
    let graph = f("simple.graph.json");
    let o = run(&["critgroup", &graph, bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["verify", &graph, bad.to_str().unwrap(), "--all-vertices"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn apply_op_reports_bounds_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("after");
    let o = run(&[
        "apply-op",
        &f("nonsimple.graph.json"),
        &f("nonsimple.first.structure.json"),
        "--vertex",
        "4",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("lower bound achieved: 192"),
        "{}",
        stdout(&o)
    );

    // the written files load back and describe the operated structure
    let g = dir.path().join("after.graph.json");
    let s = dir.path().join("after.structure.json");
    let o = run(&["critgroup", g.to_str().unwrap(), s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("invariant factors: 4,48"));

    let o = run(&[
        "apply-op",
        &f("nonsimple.graph.json"),
        &f("nonsimple.second.structure.json"),
        "--vertex",
        "4",
    ]);
    assert!(stdout(&o).contains("upper bound achieved: 768"));

    let o = run(&[
        "apply-op",
        &f("simple.graph.json"),
        &f("simple.structure.json"),
        "--vertex",
        "7",
    ]);
    assert!(stdout(&o).contains("after: Z/3 ⊕ Z/3 ⊕ Z/9 ⊕ Z/9"));
}

#[test]
fn apply_op_bad_vertex_exits_4() {
    for v in ["0", "8"] {
        let o = run(&[
            "apply-op",
            &f("simple.graph.json"),
            &f("simple.structure.json"),
            "--vertex",
            v,
        ]);
        assert_eq!(o.status.code(), Some(4), "vertex {v}");
    }
}

#[test]
fn verify_examples_exit_0() {
    let o = run(&[
        "verify",
        &f("simple.graph.json"),
        &f("simple.structure.json"),
        "--all-vertices",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" 0 fail"));
    for s in [
        "nonsimple.first.structure.json",
        "nonsimple.second.structure.json",
    ] {
        let o = run(&[
            "verify",
            &f("nonsimple.graph.json"),
            &f(s),
            "--vertex",
            "4",
            "--json",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["proven_failure"], false);
        assert_eq!(v["conjecture_failure"], false);
    }
}

#[test]
fn verify_needs_a_vertex_choice() {
    let o = run(&[
        "verify",
        &f("simple.graph.json"),
        &f("simple.structure.json"),
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn enumerate_counts() {
    let cases = [
        ("path3.graph.json", "3", 2),
        ("single.graph.json", "5", 1),
        ("triangle.graph.json", "6", 10),
    ];
    for (graph, rmax, count) in cases {
        let o = run(&["enumerate", &f(graph), "--rmax", rmax]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(text.starts_with(&format!(
            "BOUND: only structures with every r entry <= {rmax}"
        )));
        assert!(text.contains(&format!("count: {count}\n")), "{text}");
    }
    let o = run(&["enumerate", &f("path3.graph.json"), "--rmax", "0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn fuzz_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "fuzz", "--seed", "0", "--cases", "300", "--target", "theorems", "--dims", "2..4",
    ];
    let a = run_in(dir.path(), &args);
    let b = run_in(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("theorem failures: 0"));
    assert!(!dir.path().join("fuzz-witnesses").exists());

    let o = run_in(dir.path(), &["fuzz", "--cases", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"], serde_json::json!({}));
}

#[test]
fn recheck_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    std::fs::write(
        &w,
        r#"{"property_id": "CONJ_ALPHA", "k": 1,
            "graph": {"n": 4, "edges": [[1, 2, 1], [1, 3, 1], [2, 3, 5], [2, 4, 2], [3, 4, 2]]},
            "structure": {"d": [2, 7, 7, 8], "r": [2, 2, 2, 1]}, "vertex": 4}"#,
    )
    .unwrap();
    let o = run(&["recheck", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("CONJ_ALPHA"));
    assert!(stdout(&o).contains("PASS"));

    std::fs::write(
        &w,
        r#"{"property_id": "INJECTED", "matrix": {"rows": [[7]]}}"#,
    )
    .unwrap();
    assert_eq!(
        run(&["recheck", w.to_str().unwrap()]).status.code(),
        Some(4)
    );
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["bogus"]).status.code(), Some(4));
}
