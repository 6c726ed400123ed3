use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn ccg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccg")).args(args).env_remove("CCG_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn crossing_number_text_and_json() {
    let o = ccg(&["cr", &data("k5.graph")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "cr = 1");

    let o = ccg(&["cr", &data("k33.graph"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cr"], 1);
    assert_eq!(v["inconclusive"], false);
}

#[test]
fn witness_drawing_parses_back() {
    let o = ccg(&["cr", &data("k6.graph"), "--witness"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let body = &text[text.find('\n').unwrap() + 1..];
    let rec = crossing_critical::format::parse_graph(body).unwrap();
    assert_eq!(rec.drawing().unwrap().unwrap().crossing_count(), 3);
}

#[test]
fn budget_exhaustion_exits_two() {
    let o = ccg(&["cr", &data("k6.graph"), "--budget", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unknown above budget 2"));
    let o = Command::new(env!("CARGO_BIN_EXE_ccg")).args(["cr", &data("k6.graph")]).env("CCG_BUDGET", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn criticality_verdicts() {
    let o = ccg(&["critical", &data("k5.graph"), "--c", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("critical"));
    let o = ccg(&["critical", &data("k4.graph"), "--c", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("not critical"));
}

#[test]
fn analyze_finds_the_spoke_band() {
    let o = ccg(&["analyze", &data("cl6.graph")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("path ")).count(), 6);
    assert!(text.contains("shelled yes"));
}

#[test]
fn reduce_auto_recovers_k5() {
    let o = ccg(&["reduce", &data("subdivided-k5.graph"), "--auto"]);
    assert!(o.status.success());
    let g = crossing_critical::format::parse_graph(&stdout(&o)).unwrap().graph;
    let k5 = crossing_critical::graph::families::complete(5);
    assert_eq!(crossing_critical::canon::canonical_code(&g), crossing_critical::canon::canonical_code(&k5));
}

#[test]
fn expand_then_reduce() {
    let o = ccg(&["expand", &data("k5.graph"), "--spec", "subdivide e0 2"]);
    assert!(o.status.success());
    let g = crossing_critical::format::parse_graph(&stdout(&o)).unwrap().graph;
    assert_eq!((g.n(), g.m()), (7, 12));
}

#[test]
fn census_and_enumerate_agree() {
    let census = ccg(&["census", "--c", "1", "--max-n", "6"]);
    let grown = ccg(&["enumerate", "--c", "1", "--max-n", "6", "--seeds", &data("kuratowski.graphs"), "--templates", "subdivision"]);
    assert!(census.status.success() && grown.status.success());
    let body = |o: &Output| {
        stdout(o).lines().filter(|l| l.starts_with("graph ")).map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect::<Vec<_>>()
    };
    assert_eq!(body(&census).len(), 3);
    assert_eq!(body(&census), body(&grown));
}

#[test]
fn path_decomposition_commands() {
    let o = ccg(&["pd", "validate", &data("cl6.graph"), &data("cl6.pd")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid width 5"));
    let o = ccg(&["pd", "find", &data("k4.graph"), "--width", "3"]);
    assert!(o.status.success());
}

#[test]
fn output_file_option() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ccg-cr-out.txt");
    let o = ccg(&["cr", &data("k5.graph"), "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "cr = 1");
}

#[test]
fn errors_exit_one() {
    assert_eq!(ccg(&["bogus"]).status.code(), Some(1));
    assert_eq!(ccg(&["cr", "/nonexistent/graph"]).status.code(), Some(1));
    let bad = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("bad.graph");
    std::fs::write(&bad, "3 1\n0 0 9\n").unwrap();
    let o = ccg(&["cr", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ccg:"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["analyze".to_string(), data("cl6.graph")],
        vec!["census".into(), "--c".into(), "2".into(), "--max-n".into(), "6".into(), "--format".into(), "json".into()],
        vec!["cr".into(), data("k6.graph"), "--witness".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (ccg(&args), ccg(&args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
