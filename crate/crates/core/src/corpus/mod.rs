//! The worked examples: bushes, de Bruijn terms (plain and with explicit
//! substitution), the tangled `D` type, and the functions written over them.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::derive::{derive_hofold, indexed_rep_of, FoldSpec, HOFoldSpec, IndexedRep};
use crate::syntax::{format_decl, load_program, reachability_closure, Program};

pub mod functions;
pub mod literals;
pub mod reference;
pub mod registry;
pub mod specs;

pub use functions::*;
pub use literals::*;
pub use registry::{call, entries, entry, eval_named, is_callable, literal, CorpusEntry, EntryKind};
pub use specs::{
    fold_b, fold_bush_derived, fold_d, fold_e, fold_i, fold_t, incr_terme, nbush, nincr, term_family, terme_family,
};

pub const SOURCES: [(&str, &str); 5] = [
    ("bush", include_str!("../../../../programs/bush.ndt")),
    ("list", include_str!("../../../../programs/list.ndt")),
    ("term", include_str!("../../../../programs/term.ndt")),
    ("terme", include_str!("../../../../programs/terme.ndt")),
    ("d", include_str!("../../../../programs/d.ndt")),
];

fn programs() -> &'static BTreeMap<&'static str, Program> {
    static P: OnceLock<BTreeMap<&'static str, Program>> = OnceLock::new();
    P.get_or_init(|| {
        SOURCES
            .iter()
            .map(|(name, src)| (*name, load_program(src).unwrap_or_else(|e| panic!("corpus program {name}: {e}"))))
            .collect()
    })
}

/// A bundled program by name: `bush`, `list`, `term`, `terme` or `d`.
pub fn program(name: &str) -> &'static Program {
    programs().get(name).unwrap_or_else(|| panic!("no corpus program `{name}`"))
}

pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Folds of the corpus, built once.
pub struct Folds {
    pub b: FoldSpec,
    pub i: FoldSpec,
    pub t: FoldSpec,
    pub e: FoldSpec,
    pub d: FoldSpec,
    pub hb: HOFoldSpec,
    pub ht: HOFoldSpec,
    pub he: HOFoldSpec,
    pub hd: HOFoldSpec,
    pub bush_n: IndexedRep,
}

pub fn folds() -> &'static Folds {
    static F: OnceLock<Folds> = OnceLock::new();
    F.get_or_init(|| {
        let (b, i, t, e, d) = (fold_b(), fold_i(), fold_t(), fold_e(), fold_d());
        Folds {
            hb: derive_hofold(program("bush"), &b).expect("hfoldB"),
            ht: derive_hofold(program("term"), &t).expect("hfoldT"),
            he: derive_hofold(program("terme"), &e).expect("hfoldE"),
            hd: derive_hofold(program("d"), &d).expect("hfoldD"),
            bush_n: indexed_rep_of(&b).expect("BushN"),
            b,
            i,
            t,
            e,
            d,
        }
    })
}

/// Program that declares the family of a corpus fold.
pub fn program_for(fold: &str) -> &'static Program {
    match fold {
        "foldB" | "foldBN" => program("bush"),
        "foldI" | "foldT" => program("term"),
        "foldE" => program("terme"),
        _ => program("d"),
    }
}

/// `(program, root, fold)` for each presented fold.
pub fn presented() -> Vec<(&'static str, &'static str, &'static FoldSpec)> {
    let f = folds();
    vec![
        ("bush", "Bush", &f.b),
        ("term", "Incr", &f.i),
        ("term", "Term", &f.t),
        ("terme", "TermE", &f.e),
        ("d", "D", &f.d),
    ]
}

/// The presented fold for `root` when `prog` declares `root` and everything
/// it reaches exactly as the bundled program does.
pub fn presented_fold(prog: &Program, root: &str) -> Option<FoldSpec> {
    let (name, _, spec) = presented().into_iter().find(|(_, r, _)| *r == root)?;
    let ours = program(name);
    let closure = reachability_closure(ours, root).ok()?;
    let same = closure.iter().all(|t| match (prog.decl(t), ours.decl(t)) {
        (Some(a), Some(b)) => format_decl(a) == format_decl(b),
        _ => false,
    });
    same.then(|| spec.clone())
}
