use std::path::PathBuf;
use std::process::{Command, Output};

use nestfold::corpus::{self, folds, program};
use nestfold::derive::artifacts_for;
use nestfold::emit::{check_listing, emit_agda, emit_json, EmitOptions, Fit};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nestfold"))
}

fn prog_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../programs").join(format!("{name}.ndt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("NESTFOLD_PROFILE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn derive_summary_for_d() {
    let f = prog_file("d");
    let o = run(&["derive", f.to_str().unwrap(), "--type", "D"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("index type IndexD: VarA/0, VarB/0, IsD/2, IsI/1"), "{out}");
    assert!(out.contains("fold foldD (7 cases)"), "{out}");
}

#[test]
fn derive_json_matches_library() {
    let f = prog_file("bush");
    let o = run(&["derive", f.to_str().unwrap(), "--type", "Bush", "--json"]);
    assert_eq!(code(&o), 0);
    let a = artifacts_for(program("bush"), folds().b.clone()).unwrap();
    assert_eq!(stdout(&o), emit_json(&a));
}

#[test]
fn derive_unknown_root_is_usage_error() {
    let f = prog_file("bush");
    assert_eq!(code(&run(&["derive", f.to_str().unwrap(), "--type", "Nope"])), 2);
    assert_eq!(code(&run(&["derive", "/no/such/file.ndt", "--type", "Bush"])), 2);
}

#[test]
fn emit_writes_library_text() {
    let dir = tempfile::tempdir().unwrap();
    let f = prog_file("bush");
    let o = run(&["emit", f.to_str().unwrap(), "--type", "Bush", "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("Bush.agda")).unwrap();
    let a = artifacts_for(program("bush"), folds().b.clone()).unwrap();
    assert_eq!(text, emit_agda(program("bush"), &a, &EmitOptions::all("Bush")).unwrap());
    check_listing(&text, include_str!("../../core/tests/golden/foldB.agda"), Fit::Whole).unwrap();
    assert!(text.starts_with("{-# OPTIONS --type-in-type #-}"));
}

#[test]
fn emit_include_and_pragma() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let f = prog_file("bush");
    let f = f.to_str().unwrap();
    let o = run(&["emit", f, "--type", "Bush", "--include", "fold,church", "--no-type-in-type", "-o", out]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("Bush.agda")).unwrap();
    assert!(!text.contains("OPTIONS"));
    assert!(text.contains("cfoldB"));
    assert!(!text.contains("data Bush"));
    assert_eq!(code(&run(&["emit", f, "--type", "Bush", "--include", "fold,bogus", "-o", out])), 2);
    assert_eq!(code(&run(&["emit", f, "--type", "Bush", "--include", "church", "-o", out])), 2);
    assert_eq!(code(&run(&["emit", f, "--type", "Bush", "--backend", "coq", "-o", out])), 2);
}

#[test]
fn emit_corpus_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["emit", "--corpus", "--backend", "json", "-o", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    for root in ["Bush", "Incr", "Term", "TermE", "D"] {
        let text = std::fs::read_to_string(dir.path().join(format!("{root}.artifacts.json"))).unwrap();
        nestfold::load_json(&text).unwrap();
    }
}

#[test]
fn eval_matches_library() {
    let o = run(&["eval", "--fn", "sumB", "bush1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "34");
    let o = run(&["eval", "--fn", "redexE", "redex1"]);
    assert_eq!(stdout(&o).trim(), corpus::literal("term2").unwrap().to_string());
    let o = run(&["eval", "--fn", "mapIncr", "--index", "2", "Succ[Succ[Zero]]"]);
    assert_eq!(stdout(&o).trim(), "Succ[Succ[Succ[Zero]]]");
}

#[test]
fn eval_errors() {
    assert_eq!(code(&run(&["eval", "--fn", "noSuchFn", "bush1"])), 2);
    assert_eq!(code(&run(&["eval", "--fn", "sumB", "Var['x']"])), 2);
    assert_eq!(code(&run(&["eval", "--fn", "sumB", "[[["])), 2);
}

#[test]
fn check_single_property() {
    let o = run(&["check", "--property", "map_nil", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("seed 3\nPASS map_nil"), "{out}");
    let o = run(&["check", "--property", "beta_law_term", "--max-size", "5", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bounds"]["term_size"], 5);
    assert_eq!(v["reports"][0]["status"], "pass");
}

#[test]
fn check_errors() {
    assert_eq!(code(&run(&["check", "--property", "no_such_law"])), 2);
    assert_eq!(code(&run(&["check", "--all", "--profile", "bogus"])), 2);
    assert_eq!(code(&run(&["check", "--property", "map_nil", "--max-size", "0"])), 2);
    assert_eq!(code(&run(&["check"])), 2);
}

#[test]
fn check_all_fast() {
    let o = run(&["check", "--all", "--profile", "fast"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS ")).count(), nestfold::check::properties().len());
}

#[test]
fn corpus_list() {
    let o = run(&["corpus", "list", "--kind", "function"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().count() >= 22);
    let o = run(&["corpus", "list", "term"]);
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert!(names.contains(&"term1".to_string()) && names.contains(&"term2".to_string()));
    assert_eq!(code(&run(&["corpus", "list", "--kind", "bogus"])), 2);
}
