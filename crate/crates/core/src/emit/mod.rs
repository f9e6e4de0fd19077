//! Agda and JSON output for derived artifacts.

pub mod agda;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derive::{derive_map_spec, DerivedArtifacts, FoldSpec, IndexTypeDecl};
use crate::syntax::{reachability_closure, DataDecl, Program};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Agda,
    Json,
}

impl FromStr for Backend {
    type Err = EmitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "agda" => Ok(Backend::Agda),
            "json" => Ok(Backend::Json),
            _ => Err(EmitError::UnknownBackend(s.to_string())),
        }
    }
}

/// Sections of an emitted module, in output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Part {
    NestedDecl,
    Interpretation,
    Fold,
    Induction,
    Map,
    Hofold,
    IndexedRep,
    Church,
}

impl Part {
    pub const ALL: [Part; 8] = [
        Part::NestedDecl,
        Part::Interpretation,
        Part::Fold,
        Part::Induction,
        Part::Map,
        Part::Hofold,
        Part::IndexedRep,
        Part::Church,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Part::NestedDecl => "nested-decl",
            Part::Interpretation => "interpretation",
            Part::Fold => "fold",
            Part::Induction => "induction",
            Part::Map => "map",
            Part::Hofold => "hofold",
            Part::IndexedRep => "indexed-rep",
            Part::Church => "church",
        }
    }

    /// Parts that are written in terms of the fold.
    pub fn needs_fold(self) -> bool {
        matches!(self, Part::Induction | Part::Map | Part::Hofold | Part::Church)
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Part {
    type Err = EmitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Part::ALL.iter().copied().find(|p| p.as_str() == s).ok_or_else(|| EmitError::UnknownPart(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("nothing to emit: the include set is empty")]
    EmptyInclude,
    #[error("`{0}` cannot be emitted without `fold`")]
    MissingFold(Part),
    #[error("unknown include `{0}` (expected one of nested-decl, interpretation, fold, induction, map, hofold, indexed-rep, church)")]
    UnknownPart(String),
    #[error("unknown backend `{0}` (expected agda or json)")]
    UnknownBackend(String),
    #[error("`{0}` has no root declaration")]
    NoRoot(String),
    #[error("malformed artifacts: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmitOptions {
    pub backend: Backend,
    pub include: BTreeSet<Part>,
    pub module: String,
    /// Print the `--type-in-type` pragma when Church encodings are included.
    pub type_in_type: bool,
}

impl EmitOptions {
    /// Every part, as a module named `module`.
    pub fn all(module: &str) -> Self {
        EmitOptions {
            backend: Backend::Agda,
            include: Part::ALL.into_iter().collect(),
            module: module.to_string(),
            type_in_type: true,
        }
    }

    pub fn with_include(mut self, parts: &[Part]) -> Self {
        self.include = parts.iter().copied().collect();
        self
    }

    /// Parses a comma-separated include list.
    pub fn parse_include(list: &str) -> Result<BTreeSet<Part>, EmitError> {
        list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(Part::from_str).collect()
    }

    pub fn validate(&self) -> Result<(), EmitError> {
        if self.include.is_empty() {
            return Err(EmitError::EmptyInclude);
        }
        if !self.include.contains(&Part::Fold) {
            if let Some(p) = self.include.iter().find(|p| p.needs_fold()) {
                return Err(EmitError::MissingFold(*p));
            }
        }
        Ok(())
    }
}

fn closure_decls<'a>(prog: &'a Program, root: &str) -> Result<Vec<&'a DataDecl>, EmitError> {
    let closure = reachability_closure(prog, root).map_err(|_| EmitError::NoRoot(root.to_string()))?;
    Ok(prog.decls.iter().filter(|d| closure.contains(&d.name)).collect())
}

/// The Agda module for one root's artifacts.
pub fn emit_agda(prog: &Program, a: &DerivedArtifacts, opts: &EmitOptions) -> Result<String, EmitError> {
    opts.validate()?;
    let spec = &a.fold_spec;
    let has = |p: Part| opts.include.contains(&p);
    let mut sections: Vec<String> = Vec::new();
    if has(Part::NestedDecl) {
        let root = spec.root.as_deref().ok_or_else(|| EmitError::NoRoot(spec.name.clone()))?;
        sections.extend(closure_decls(prog, root)?.into_iter().map(agda::data_decl));
    }
    if has(Part::Interpretation) {
        sections.push(agda::index_type_decl(&a.index_type));
        sections.push(agda::interpretation_def(&a.interpretation, None));
    }
    if has(Part::Fold) {
        sections.push(agda::fold_def(spec));
    }
    if has(Part::Induction) {
        sections.push(agda::induction_def(&a.induction_spec));
    }
    if has(Part::Map) {
        let m = derive_map_spec(spec);
        sections.push(agda::map_def(&m).unwrap_or_else(|| {
            format!("-- {} is not emitted: interpreted raw arguments need a map of their own.", m.name)
        }));
    }
    if has(Part::Hofold) {
        sections.push(agda::hofold_def(&a.hofold));
    }
    if has(Part::IndexedRep) {
        sections.push(agda::indexed_rep_def(spec, &a.indexed_rep));
    }
    if has(Part::Church) {
        sections.push(format!("{}\n\n{}", agda::CHURCH_CAVEAT, agda::church_def(&a.church)));
    }
    let mut out = String::new();
    if has(Part::Church) && opts.type_in_type {
        out.push_str("{-# OPTIONS --type-in-type #-}\n\n");
    }
    out.push_str(&format!("module {} where\n", opts.module));
    for s in sections {
        out.push('\n');
        out.push_str(&s);
        out.push('\n');
    }
    Ok(format_canonical(Canonical::Text(&out)))
}

/// Canonical JSON; fields keep the artifact order.
pub fn emit_json(a: &DerivedArtifacts) -> String {
    let mut s = serde_json::to_string_pretty(a).expect("artifacts serialize");
    s.push('\n');
    s
}

pub fn load_json(text: &str) -> Result<DerivedArtifacts, EmitError> {
    serde_json::from_str(text).map_err(|e| EmitError::Json(e.to_string()))
}

/// `(file name, contents)` for the selected backend.
pub fn emit(prog: &Program, a: &DerivedArtifacts, opts: &EmitOptions) -> Result<(String, String), EmitError> {
    match opts.backend {
        Backend::Agda => Ok((format!("{}.agda", opts.module), emit_agda(prog, a, opts)?)),
        Backend::Json => {
            opts.validate()?;
            Ok((format!("{}.artifacts.json", opts.module), emit_json(a)))
        }
    }
}

pub enum Canonical<'a> {
    Decl(&'a DataDecl),
    IndexType(&'a IndexTypeDecl),
    Fold(&'a FoldSpec),
    Text(&'a str),
}

/// Shared pretty-printer: declarations and folds in Agda form, and any text
/// with trailing space stripped, inner runs of spaces collapsed and line
/// breaks normalized. Its output is a fixed point.
pub fn format_canonical(item: Canonical<'_>) -> String {
    let raw = match item {
        Canonical::Decl(d) => agda::data_decl(d),
        Canonical::IndexType(ix) => agda::index_type_decl(ix),
        Canonical::Fold(f) => agda::fold_def(f),
        Canonical::Text(t) => t.to_string(),
    };
    let mut out = String::new();
    for line in raw.replace("\r\n", "\n").replace('\r', "\n").lines() {
        let indent = line.len() - line.trim_start().len();
        out.push_str(&line[..indent]);
        out.push_str(&line.split_whitespace().collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    while out.ends_with("\n\n") {
        out.pop();
    }
    out
}

/// Comparison form for printed listings: all whitespace runs, line breaks
/// included, become one space.
pub fn normalize_ws(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// How a printed listing must sit inside emitted text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fit {
    /// Equal to one whole blank-line separated block.
    Whole,
    /// The start of a block, such as a signature without its clauses.
    Prefix,
    /// A contiguous run of tokens inside some block.
    Within,
}

/// Checks each blank-line separated block of `listing` against the blocks of
/// `emitted`, comparing whitespace-normalized tokens.
pub fn check_listing(emitted: &str, listing: &str, fit: Fit) -> Result<(), String> {
    let blocks: Vec<Vec<&str>> = emitted.split("\n\n").map(|b| b.split_whitespace().collect()).collect();
    for want in listing.split("\n\n").filter(|b| !b.trim().is_empty()) {
        let w: Vec<&str> = want.split_whitespace().collect();
        let ok = blocks.iter().any(|b| match fit {
            Fit::Whole => *b == w,
            Fit::Prefix => b.starts_with(&w),
            Fit::Within => b.windows(w.len()).any(|x| x == w.as_slice()),
        });
        if !ok {
            return Err(format!("no emitted block matches:\n{}", normalize_ws(want)));
        }
    }
    Ok(())
}

/// `case: idx, idx` listing the recursive argument indexes of `cases`.
pub fn recursive_indexes(spec: &FoldSpec, cases: &[&str]) -> String {
    let mut s = String::new();
    for c in spec.cases.iter().filter(|c| cases.contains(&c.name.as_str())) {
        let idx: Vec<String> = c.recursive_args().map(|(_, i)| i.to_string()).collect();
        s.push_str(&format!("{}: {}\n", c.name, idx.join(", ")));
    }
    s
}
