use std::fs;

use dessin_cli::{cmd_info, cmd_system, run, CommandConfig, EXIT_INPUT, EXIT_OK};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("dessin").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn info_reports_case_labels() {
    let theta = cmd_info(&CommandConfig::builtin("theta")).unwrap();
    assert!(theta.contains("case: <3,3|2,2,2>"));
    assert!(theta.contains("genus: 0"));
    assert!(theta.contains("regularity: regular"));
    let cube = cmd_info(&CommandConfig::builtin("cube")).unwrap();
    assert!(cube.contains("case: <3,3,3,3,3,3,3,3|4,4,4,4,4,4>"));
    let q = cmd_info(&CommandConfig::builtin("quotient411")).unwrap();
    assert!(q.contains("case: <3,3|4,1,1>") && q.contains("regularity: irregular"));
}

#[test]
fn system_reports_relations() {
    let theta = cmd_system(&CommandConfig::builtin("theta")).unwrap();
    assert!(theta.contains("only solution a = b = c = 0"));
    let tetra = cmd_system(&CommandConfig::builtin("tetrahedron")).unwrap();
    for rel in ["a = d", "b = e", "c = f", "a + b + c = 0"] {
        assert!(tetra.lines().any(|l| l.trim() == rel), "{rel} in {tetra}");
    }
}

#[test]
fn generators_of_theta() {
    let (code, out, _) = run_args(&["generators", "--builtin", "theta", "--zero"]);
    assert_eq!(code, EXIT_OK);
    for m in ["[[1,0],[2,1]]", "[[1,-2],[0,1]]", "[[-1,-2],[2,3]]"] {
        assert!(out.contains(m), "{m}");
    }
    let fixed: Vec<&str> = out
        .lines()
        .filter_map(|l| l.trim().strip_prefix("fixed point: "))
        .collect();
    assert_eq!(fixed, ["0", "inf", "-1"]);
    assert!(out.contains("relation: g3·g2·g1 = 1 OK"));
}

#[test]
fn genus_one_has_no_relation() {
    let (code, out, _) = run_args(&["generators", "--builtin", "twisted_theta"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("relation: none"));
}

#[test]
fn graph_and_labeling_files() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("t.graph");
    fs::write(
        &graph,
        "vertex u: a b c\nvertex v: a' c' b'\nedge a a'\nedge b b'\nedge c c'\n",
    )
    .unwrap();
    let z = dir.path().join("t.z");
    fs::write(&z, "a 0.5\nb' -0.5\n").unwrap();
    let g = graph.to_str().unwrap();
    let (code, out, err) = run_args(&["generators", "--graph", g, "--z", z.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("shears: given"));
    let (code, out, _) = run_args(&["info", "--graph", g, "--base", "c'"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("base: c'"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    fs::write(&bad, "vertex u: a b c d\n").unwrap();
    for args in [
        vec!["info", "--builtin", "nonesuch"],
        vec!["info", "--graph", bad.to_str().unwrap()],
        vec!["info", "--graph", "/nonexistent/x.graph"],
        vec!["info"],
        vec!["info", "--builtin", "theta", "--graph", "x"],
        vec!["info", "--builtin", "theta", "--base", "zz"],
        vec!["net", "--builtin", "theta", "--depth", "9"],
        vec!["verify", "--builtin", "theta", "--tol", "-1"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = run_args(&args);
        assert_eq!(code, EXIT_INPUT, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn net_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("net.txt");
    let svg = dir.path().join("net.svg");
    let (code, text, err) = run_args(&[
        "net",
        "--builtin",
        "theta",
        "--depth",
        "2",
        "--out",
        out.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--fill",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(text.starts_with("# 10 triangles to depth 2"));
    let list = fs::read_to_string(&out).unwrap();
    assert_eq!(list.lines().count(), 10);
    assert!(list.lines().any(|l| l == "-1 0 inf"));
    assert!(fs::read_to_string(&svg).unwrap().contains("<svg"));
    let (code, _, _) = run_args(&[
        "net",
        "--builtin",
        "theta",
        "--svg",
        "/nonexistent/dir/x.svg",
    ]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn verify_passes_on_theta() {
    let (code, out, _) = run_args(&[
        "verify",
        "--builtin",
        "theta",
        "--seed",
        "42",
        "--samples",
        "40",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 8);
    assert!(out.lines().all(|l| l.contains("seed 42")));
}

#[test]
fn help_is_not_an_error() {
    let (code, out, _) = run_args(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("generators"));
}
