//! Indexed representations, conversions and Church encodings.

use serde::{Deserialize, Serialize};

use super::fold::{derive_fold_spec, ArgSpec, Family, FoldCase, FoldSpec, Template, ValuePattern};
use super::index::{IndexExpr, IndexTypeDecl, InterpretationFn};
use super::DeriveError;
use crate::syntax::Program;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedCtor {
    pub name: String,
    /// The fold case this constructor mirrors.
    pub case: String,
    pub index: IndexExpr,
    pub args: Vec<ArgSpec>,
}

impl IndexedCtor {
    pub fn index_vars(&self) -> Vec<String> {
        self.index.vars()
    }
}

/// A non-nested declaration indexed by the fold's index type, one
/// constructor per fold case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedRepDecl {
    pub name: String,
    pub index_type: IndexTypeDecl,
    pub params: Vec<String>,
    /// Interpretation for raw arguments such as `NIncr m a`.
    pub source_interp: InterpretationFn,
    pub ctors: Vec<IndexedCtor>,
}

impl IndexedRepDecl {
    pub fn ctor(&self, name: &str) -> Option<&IndexedCtor> {
        self.ctors.iter().find(|c| c.name == name)
    }

    pub fn ctor_for_case(&self, case: &str) -> Option<&IndexedCtor> {
        self.ctors.iter().find(|c| c.case == case)
    }
}

/// Constructor-replacement algebras between a nested family and its
/// indexed representation, as case templates over the respective folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conversions {
    /// Over the nested fold: each case rebuilds its indexed twin.
    pub to: Vec<(String, Template)>,
    /// Over the indexed fold: each case rebuilds the original shape.
    pub from: Vec<(String, Template)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedRep {
    pub decl: IndexedRepDecl,
    /// The companion fold pattern-matching every indexed constructor.
    pub fold: FoldSpec,
    pub conversions: Conversions,
}

fn capitalize(s: &str) -> String {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

fn rep_ctor_name(f: &FoldSpec, case: &FoldCase) -> String {
    let leaves = f.cases.iter().filter(|c| c.is_leaf()).count();
    match &case.pattern {
        ValuePattern::Bind(_) => match case.args.first().map(|a| &a.kind) {
            Some(super::fold::ArgKind::Raw(super::fold::RawType::Param(p))) if leaves > 1 => {
                format!("Base{}", capitalize(p))
            }
            _ => "Base".to_string(),
        },
        ValuePattern::Con(c, args) if args.iter().all(|a| matches!(a, ValuePattern::Bind(_))) => format!("{c}N"),
        ValuePattern::Con(..) => format!("{}N", capitalize(&case.name)),
    }
}

/// Indexed representation of any fold spec's family.
pub fn indexed_rep_of(f: &FoldSpec) -> Result<IndexedRep, DeriveError> {
    let root = f.root.clone().ok_or_else(|| DeriveError::NotProper(format!("`{}` has no root type", f.name)))?;
    let mut taken: Vec<String> = Vec::new();
    let ctors: Vec<IndexedCtor> = f
        .cases
        .iter()
        .map(|c| {
            let base = rep_ctor_name(f, c);
            let name = if taken.contains(&base) {
                (2..).map(|k| format!("{base}{k}")).find(|n| !taken.contains(n)).expect("unbounded")
            } else {
                base
            };
            taken.push(name.clone());
            IndexedCtor { name, case: c.name.clone(), index: c.index.clone(), args: c.args.clone() }
        })
        .collect();
    let decl = IndexedRepDecl {
        name: format!("{root}N"),
        index_type: f.family.index_type().clone(),
        params: f.family.params().to_vec(),
        source_interp: f.family.interpretation().clone(),
        ctors,
    };
    let cases = f
        .cases
        .iter()
        .zip(&decl.ctors)
        .map(|(c, k)| FoldCase {
            pattern: ValuePattern::Con(
                k.name.clone(),
                c.args.iter().map(|a| ValuePattern::Bind(a.binder.clone())).collect(),
            ),
            ..c.clone()
        })
        .collect();
    let fold =
        FoldSpec { name: format!("{}N", f.name), family: Family::Indexed(Box::new(decl.clone())), cases, ..f.clone() };
    let conversions = derive_conversions(f, &decl);
    Ok(IndexedRep { decl, fold, conversions })
}

/// Indexed representation of a declaration's direct fold.
pub fn derive_indexed_rep(p: &Program, root: &str) -> Result<IndexedRep, DeriveError> {
    indexed_rep_of(&derive_fold_spec(p, root)?)
}

/// `to` maps each case to its indexed constructor (leaves get `Base`);
/// `from` maps each indexed constructor back to the case's pattern.
pub fn derive_conversions(f: &FoldSpec, decl: &IndexedRepDecl) -> Conversions {
    let to = f
        .cases
        .iter()
        .zip(&decl.ctors)
        .map(|(c, k)| {
            (
                c.name.clone(),
                Template::Ctor(k.name.clone(), c.args.iter().map(|a| Template::Slot(a.binder.clone())).collect()),
            )
        })
        .collect();
    let from = f.cases.iter().map(|c| (c.name.clone(), Template::of_pattern(&c.pattern))).collect();
    Conversions { to, from }
}

/// Church encoding of a fold's family: the type of the fold at a fixed
/// index, constructors selecting their own case. Emitted, never run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChurchEncodingDecl {
    pub name: String,
    pub fold: FoldSpec,
    /// `(constructor name, case name)`.
    pub ctors: Vec<(String, String)>,
    pub cfold_name: String,
    pub cmap_name: String,
}

pub fn derive_church(f: &FoldSpec) -> ChurchEncodingDecl {
    let name = match &f.family {
        Family::Indexed(rep) => format!("C{}", rep.name),
        Family::Interpreted { interp, .. } => format!("C{}", interp.name),
    };
    ChurchEncodingDecl {
        name,
        fold: f.clone(),
        ctors: f.cases.iter().map(|c| (format!("c{}", c.name), c.name.clone())).collect(),
        cfold_name: format!("c{}", f.name),
        cmap_name: format!("c{}", super::fold::map_name(&f.name)),
    }
}
