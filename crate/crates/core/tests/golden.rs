//! Emitted Agda against reference listings.

use nestfold::corpus::{folds, program};
use nestfold::derive::{artifacts_for, DerivedArtifacts};
use nestfold::emit::{
    agda, check_listing, emit_agda, format_canonical, normalize_ws, recursive_indexes, Canonical, EmitOptions, Fit,
};

fn bush() -> (DerivedArtifacts, String) {
    let a = artifacts_for(program("bush"), folds().b.clone()).unwrap();
    let text = emit_agda(program("bush"), &a, &EmitOptions::all("Bush")).unwrap();
    (a, text)
}

fn d() -> (DerivedArtifacts, String) {
    let a = artifacts_for(program("d"), folds().d.clone()).unwrap();
    let text = emit_agda(program("d"), &a, &EmitOptions::all("D")).unwrap();
    (a, text)
}

fn fits(text: &str, golden: &str, fit: Fit) {
    if let Err(e) = check_listing(text, golden, fit) {
        panic!("{e}\n--- emitted ---\n{text}");
    }
}

#[test]
fn fold_b() {
    fits(&bush().1, include_str!("golden/foldB.agda"), Fit::Whole);
}

#[test]
fn ind_b_type() {
    fits(&bush().1, include_str!("golden/indB.type.agda"), Fit::Prefix);
}

#[test]
fn bush_n_and_fold_bn() {
    let text = bush().1;
    fits(&text, include_str!("golden/BushN.agda"), Fit::Whole);
    fits(&text, include_str!("golden/foldBN.agda"), Fit::Whole);
}

#[test]
fn church_bush() {
    let text = bush().1;
    fits(&text, include_str!("golden/CNBush.agda"), Fit::Whole);
    assert!(text.contains("--type-in-type"));
}

#[test]
fn fold_d() {
    let text = d().1;
    fits(&text, include_str!("golden/foldD.type.agda"), Fit::Prefix);
    fits(&text, include_str!("golden/foldD.clauses.agda"), Fit::Within);
}

#[test]
fn hfold_d_type() {
    fits(&d().1, include_str!("golden/hfoldD.type.agda"), Fit::Prefix);
}

#[test]
fn index_d_is_byte_exact() {
    let (a, _) = d();
    assert_eq!(format_canonical(Canonical::IndexType(&a.index_type)), include_str!("golden/IndexD.agda"));
    assert_eq!(recursive_indexes(&a.fold_spec, &["bcons", "acons"]), include_str!("golden/foldD.indexes.txt"));
}

#[test]
fn induction_clauses_are_fold_clauses() {
    for (prog, spec) in [("bush", &folds().b), ("d", &folds().d), ("term", &folds().t), ("terme", &folds().e)] {
        let a = artifacts_for(program(prog), spec.clone()).unwrap();
        let text = emit_agda(program(prog), &a, &EmitOptions::all("M")).unwrap();
        let ind = &a.induction_spec.name;
        let clauses = |name: &str| -> Vec<String> {
            let fold = text
                .split("\n\n")
                .find(|b| b.starts_with(&format!("{name} :")))
                .unwrap_or_else(|| panic!("no block for {name}"));
            let lines: Vec<&str> = fold.lines().collect();
            let first = lines
                .iter()
                .position(|l| l.starts_with(&format!("{name} ")) && !l.starts_with(&format!("{name} :")))
                .unwrap();
            lines[first..].iter().map(|l| l.to_string()).collect()
        };
        let renamed: Vec<String> = clauses(&spec.name).iter().map(|l| l.replace(&spec.name, ind)).collect();
        assert_eq!(clauses(ind), renamed, "{ind}");
        assert_eq!(agda::fold_clauses(spec, ind), agda::fold_clauses(&a.induction_spec.fold, ind));
    }
}

#[test]
fn stable_across_runs() {
    let texts: Vec<String> = (0..3).map(|_| d().1).collect();
    assert!(texts.windows(2).all(|w| w[0] == w[1]));
    assert!(!normalize_ws(&texts[0]).is_empty());
}
