use serde_json::{json, Value};
use std::process::{Command, Output};

fn graph(name: &str) -> String {
    format!("{}/../../graphs/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_digraph-hopf")).args(args).env_remove("HOPF_DEFAULT_DEGREE").output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn h1_of_contractible_and_cyclic_graphs() {
    let o = run(&["h1", &graph("triangle")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o), json!({"free_rank": 0, "torsion": []}));
    let o = run(&["h1", &graph("cycle6")]);
    assert_eq!(json_of(&o)["free_rank"], 1);
}

#[test]
fn word_equality_outcomes() {
    let o = run(&["word-eq", &graph("square"), "(r<q).(q<p)", "(r<q').(q'<p)"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json_of(&o);
    assert_eq!(j["result"], "Equal");
    assert!(!j["certificate"].as_array().unwrap().is_empty());

    let lp = "(v0<v4).(v4<v3).(v3<v2).(v2<v1).(v1<v0)";
    let o = run(&["word-eq", &graph("cycle5"), lp, "(v0)"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_of(&o)["result"], "Unknown");

    let o = run(&["word-eq", "--relators", "free", &graph("square"), "(r<q).(q<p)", "(r<q').(q'<p)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn checks_pass_on_a2() {
    let o = run(&["check", &graph("a2"), "--suite", "all", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["iso", "dx", &graph("triangle"), "--verify", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_of(&o)["verification"]["instances"].as_array().unwrap().len() > 0);
}

#[test]
fn unknown_when_degree_too_small() {
    let o = run(&["check", &graph("a2"), "--suite", "antipode", "--degree", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_3() {
    let cases: Vec<Vec<String>> = vec![
        vec!["h1".into(), "/nonexistent.json".into()],
        vec!["pi1".into(), graph("a2"), "--base".into(), "zz".into()],
        vec!["word-eq".into(), graph("a2"), "(b<a".into(), "(a)".into()],
        vec!["word-eq".into(), graph("a2"), "(b<a)".into(), "(a)".into()],
        vec!["ideal-member".into(), graph("a2"), "--element".into(), "(a|z)".into()],
        vec!["frobnicate".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let o = run(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn arrows_and_pi1() {
    let o = run(&["arrows", &graph("square")]);
    assert_eq!(json_of(&o), json!({"result": "Finite", "count": 16, "heuristic": true}));
    let o = run(&["arrows", &graph("cycle5"), "--cap", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["pi1", &graph("cycle5"), "--base", "v2", "--simplify"]);
    let j = json_of(&o);
    assert_eq!(j["presentation"]["generators"].as_array().unwrap().len(), 1);
    assert_eq!(j["abelianization"], json!({"free_rank": 1, "torsion": []}));
}

#[test]
fn ideal_membership() {
    let o = run(&["ideal-member", &graph("a2"), "--element", "(a|b)", "--degree", "2"]);
    assert_eq!(json_of(&o), json!({"result": "Zero", "minimal_N": 0}));
}

#[test]
fn output_is_deterministic_and_quiet_silences_stderr() {
    let args = ["presentation", "dx", &graph("square")];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stderr.is_empty());
    let q = run(&["--quiet", "presentation", "dx", &graph("square")]);
    assert!(q.stderr.is_empty());
    assert_eq!(q.stdout, a.stdout);
}

#[test]
fn default_degree_from_environment() {
    let bin = env!("CARGO_BIN_EXE_digraph-hopf");
    let o = Command::new(bin).args(["check", &graph("a2"), "--suite", "antipode"]).env("HOPF_DEFAULT_DEGREE", "0").output().unwrap();
    assert_eq!(json_of(&o)["degree"], 0);
    let o = Command::new(bin).args(["check", &graph("a2"), "--suite", "antipode"]).env("HOPF_DEFAULT_DEGREE", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json_of(&run(&["check", &graph("a2"), "--suite", "calculus"]))["degree"], 4);
}
