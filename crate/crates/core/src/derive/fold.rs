//! First-class fold descriptions and the direct fold derivation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::index::{
    derive_interpretation, type_to_index, IndexExpr, IndexSource, IndexTypeDecl, InterpretationFn, TypeTemplate,
};
use super::rep::IndexedRepDecl;
use super::DeriveError;
use crate::syntax::{reachability_closure, Program, TypeExpr};

/// Shape of the subject matched by one fold case.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ValuePattern {
    Bind(String),
    Con(String, Vec<ValuePattern>),
}

impl ValuePattern {
    pub fn con(name: &str, args: Vec<ValuePattern>) -> Self {
        ValuePattern::Con(name.to_string(), args)
    }

    pub fn bind(name: &str) -> Self {
        ValuePattern::Bind(name.to_string())
    }

    /// Binder names in left-to-right order.
    pub fn binders(&self) -> Vec<String> {
        fn go(p: &ValuePattern, out: &mut Vec<String>) {
            match p {
                ValuePattern::Bind(b) => out.push(b.clone()),
                ValuePattern::Con(_, args) => args.iter().for_each(|a| go(a, out)),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn rename_cons(&self, map: &BTreeMap<String, String>) -> ValuePattern {
        match self {
            ValuePattern::Bind(_) => self.clone(),
            ValuePattern::Con(c, args) => ValuePattern::Con(
                map.get(c).cloned().unwrap_or_else(|| c.clone()),
                args.iter().map(|a| a.rename_cons(map)).collect(),
            ),
        }
    }

    fn render_inner(&self, top: bool) -> String {
        match self {
            ValuePattern::Bind(b) => b.clone(),
            ValuePattern::Con(c, args) if args.is_empty() => c.clone(),
            ValuePattern::Con(c, args) => {
                let inner = std::iter::once(c.clone())
                    .chain(args.iter().map(|a| a.render_inner(false)))
                    .collect::<Vec<_>>()
                    .join(" ");
                if top {
                    inner
                } else {
                    format!("({inner})")
                }
            }
        }
    }

    /// Agda-style rendering; `atom` parenthesizes applications.
    pub fn render(&self, atom: bool) -> String {
        self.render_inner(!atom)
    }
}

/// Right-hand side of a constructor-replacement case: slots are case
/// binders (recursive results or raw arguments), `Call` applies a named
/// algebra argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Template {
    Slot(String),
    Ctor(String, Vec<Template>),
    Call(String, Vec<Template>),
}

impl Template {
    pub fn of_pattern(p: &ValuePattern) -> Template {
        match p {
            ValuePattern::Bind(b) => Template::Slot(b.clone()),
            ValuePattern::Con(c, args) => Template::Ctor(c.clone(), args.iter().map(Template::of_pattern).collect()),
        }
    }

    /// Rebuilds `p` with its outermost constructor renamed.
    pub fn rename_head(p: &ValuePattern, name: &str) -> Template {
        match Template::of_pattern(p) {
            Template::Ctor(_, args) => Template::Ctor(name.to_string(), args),
            t => Template::Ctor(name.to_string(), vec![t]),
        }
    }

    pub fn slots(&self) -> Vec<String> {
        fn go(t: &Template, out: &mut Vec<String>) {
            match t {
                Template::Slot(s) => out.push(s.clone()),
                Template::Ctor(_, a) | Template::Call(_, a) => a.iter().for_each(|x| go(x, out)),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn render(&self, atom: bool) -> String {
        match self {
            Template::Slot(s) => s.clone(),
            Template::Ctor(c, a) | Template::Call(c, a) if a.is_empty() => c.clone(),
            Template::Ctor(c, a) | Template::Call(c, a) => {
                let s =
                    std::iter::once(c.clone()).chain(a.iter().map(|x| x.render(true))).collect::<Vec<_>>().join(" ");
                if atom {
                    format!("({s})")
                } else {
                    s
                }
            }
        }
    }
}

/// Type of a case argument that the fold passes through unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RawType {
    /// A carrier parameter.
    Param(String),
    /// The family's interpretation at an index, such as `NIncr m a`.
    Interp(IndexExpr),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArgKind {
    /// Folded recursively at the given (schematic) index.
    Recursive(IndexExpr),
    Raw(RawType),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgSpec {
    pub binder: String,
    pub kind: ArgKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldCase {
    pub name: String,
    /// Schematic subject index; its variables are the case's index binders.
    pub index: IndexExpr,
    pub pattern: ValuePattern,
    /// One entry per binder of `pattern`, same order.
    pub args: Vec<ArgSpec>,
}

impl FoldCase {
    pub fn index_vars(&self) -> Vec<String> {
        self.index.vars()
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.pattern, ValuePattern::Bind(_))
    }

    pub fn recursive_args(&self) -> impl Iterator<Item = (&str, &IndexExpr)> {
        self.args.iter().filter_map(|a| match &a.kind {
            ArgKind::Recursive(i) => Some((a.binder.as_str(), i)),
            ArgKind::Raw(_) => None,
        })
    }
}

/// The indexed family a fold ranges over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `wrap (interp i params)`; `wrap` is `Hole(0)` when absent.
    Interpreted { interp: InterpretationFn, wrap: Option<TypeTemplate> },
    /// The non-nested indexed representation.
    Indexed(Box<IndexedRepDecl>),
}

impl Family {
    pub fn interpreted(interp: InterpretationFn) -> Self {
        Family::Interpreted { interp, wrap: None }
    }

    pub fn index_type(&self) -> &IndexTypeDecl {
        match self {
            Family::Interpreted { interp, .. } => &interp.index_type,
            Family::Indexed(rep) => &rep.index_type,
        }
    }

    pub fn params(&self) -> &[String] {
        match self {
            Family::Interpreted { interp, .. } => &interp.params,
            Family::Indexed(rep) => &rep.params,
        }
    }

    /// The interpretation used for raw arguments and subject types.
    pub fn interpretation(&self) -> &InterpretationFn {
        match self {
            Family::Interpreted { interp, .. } => interp,
            Family::Indexed(rep) => &rep.source_interp,
        }
    }

    /// Full subject type at a closed index with symbolic parameters.
    /// Only defined for interpreted families.
    pub fn subject_type(&self, index: &IndexExpr) -> Result<TypeExpr, DeriveError> {
        match self {
            Family::Interpreted { interp, wrap } => {
                let inner = interp.interpret_symbolic(index)?;
                Ok(match wrap {
                    Some(w) => w.instantiate(&BTreeMap::new(), &[inner]),
                    None => inner,
                })
            }
            Family::Indexed(rep) => Err(DeriveError::NotInterpreted(rep.name.clone())),
        }
    }

    /// Agda rendering of the subject type at a (possibly schematic) index.
    pub fn render_subject(&self, index: &IndexExpr) -> String {
        match self {
            Family::Interpreted { interp, wrap } => {
                let inner = render_interp_app(&interp.name, index, &interp.params);
                match wrap {
                    Some(w) => w.render(&|_| format!("({inner})")),
                    None => inner,
                }
            }
            Family::Indexed(rep) => render_interp_app(&rep.name, index, &rep.params),
        }
    }

    pub fn render_raw(&self, raw: &RawType) -> String {
        match raw {
            RawType::Param(p) => p.clone(),
            RawType::Interp(i) => {
                let h = self.interpretation();
                render_interp_app(&h.name, i, &h.params)
            }
        }
    }
}

pub fn render_interp_app(name: &str, index: &IndexExpr, params: &[String]) -> String {
    let mut s = format!("{name} {}", index.to_atom_string());
    for p in params {
        s.push(' ');
        s.push_str(p);
    }
    s
}

/// How signatures are laid out when emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignatureStyle {
    /// Named case arguments with implicit index binders: `(bnil : {i j : IndexD} -> p (IsD i j))`.
    Named,
    /// Unnamed case arguments with explicit index binders: `((n : Nat) -> p (S n))`.
    Positional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FoldKind {
    /// Produced mechanically from a declaration.
    Direct,
    /// Hand-chosen index family.
    Customized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldSpec {
    pub name: String,
    pub family: Family,
    /// Name of the fold's own index argument (`i`, `n`).
    pub index_var: String,
    /// Name given to the subject in induction signatures.
    pub subject_name: String,
    pub cases: Vec<FoldCase>,
    pub style: SignatureStyle,
    /// Whether the index argument precedes the case arguments.
    pub index_first: bool,
    pub kind: FoldKind,
    /// Root declaration for direct folds.
    pub root: Option<String>,
}

impl FoldSpec {
    pub fn case(&self, name: &str) -> Option<&FoldCase> {
        self.cases.iter().find(|c| c.name == name)
    }

    pub fn case_names(&self) -> Vec<String> {
        self.cases.iter().map(|c| c.name.clone()).collect()
    }

    /// Renames cases, e.g. to match a hand-written presentation.
    pub fn with_case_names(mut self, renames: &BTreeMap<String, String>) -> FoldSpec {
        for c in &mut self.cases {
            if let Some(n) = renames.get(&c.name) {
                c.name = n.clone();
            }
        }
        self
    }

    /// Checks the structural invariants: index variables of argument
    /// specs are bound by the subject index, binders line up with the
    /// pattern, and direct folds recurse on every constructor argument.
    pub fn validate(&self) -> Result<(), DeriveError> {
        for case in &self.cases {
            let bound = case.index_vars();
            let binders = case.pattern.binders();
            if binders.len() != case.args.len() || binders.iter().zip(&case.args).any(|(b, a)| b != &a.binder) {
                return Err(DeriveError::InvalidSpec(format!("case `{}`: binders do not match arguments", case.name)));
            }
            for arg in &case.args {
                let idx = match &arg.kind {
                    ArgKind::Recursive(i) | ArgKind::Raw(RawType::Interp(i)) => i,
                    ArgKind::Raw(RawType::Param(_)) => continue,
                };
                if let Some(v) = idx.vars().into_iter().find(|v| !bound.contains(v)) {
                    return Err(DeriveError::InvalidSpec(format!(
                        "case `{}`: index variable `{v}` is not bound by the subject index",
                        case.name
                    )));
                }
            }
            if self.kind == FoldKind::Direct {
                if let Some(a) = case.args.iter().find(|a| matches!(a.kind, ArgKind::Raw(RawType::Interp(_)))) {
                    return Err(DeriveError::InvalidSpec(format!(
                        "direct fold case `{}` passes `{}` through without recursion",
                        case.name, a.binder
                    )));
                }
            }
        }
        Ok(())
    }

    /// Clause equations, ignoring the motive: the data shared by a fold and
    /// its induction principle.
    pub fn equations(&self) -> Vec<Equation> {
        self.cases.iter().map(Equation::of_case).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquationArg {
    Raw(String),
    Rec(IndexExpr, String),
}

/// `f .. idx pattern = case idxvars args`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub case: String,
    pub index: IndexExpr,
    pub pattern: ValuePattern,
    pub rhs: Vec<EquationArg>,
}

impl Equation {
    fn of_case(c: &FoldCase) -> Self {
        Equation {
            case: c.name.clone(),
            index: c.index.clone(),
            pattern: c.pattern.clone(),
            rhs: c
                .args
                .iter()
                .map(|a| match &a.kind {
                    ArgKind::Recursive(i) => EquationArg::Rec(i.clone(), a.binder.clone()),
                    ArgKind::Raw(_) => EquationArg::Raw(a.binder.clone()),
                })
                .collect(),
        }
    }
}

const INDEX_VARS: [&str; 3] = ["i", "j", "k"];
const BINDERS: [&str; 4] = ["x", "y", "l", "v"];

fn nth_name(base: &[&str], n: usize, fallback: &str) -> String {
    base.get(n).map(|s| s.to_string()).unwrap_or_else(|| format!("{fallback}{}", n + 1))
}

fn lower(s: &str) -> String {
    s.to_lowercase()
}

fn capitalize(s: &str) -> String {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

/// The direct dependently typed fold of `root`: one leaf case per root
/// parameter, then one case per constructor of each closure member (closure
/// order, declaration order), every constructor argument folded at its
/// translated index.
pub fn derive_fold_spec(p: &Program, root: &str) -> Result<FoldSpec, DeriveError> {
    let closure = reachability_closure(p, root)?;
    let h = derive_interpretation(p, root)?;
    let index_type = h.index_type.clone();
    let mut cases = Vec::new();
    let mut taken: Vec<String> = h.params.clone();
    taken.extend(INDEX_VARS.iter().map(|s| s.to_string()));
    taken.extend(BINDERS.iter().map(|s| s.to_string()));
    let fresh_case = |base: String, taken: &mut Vec<String>| {
        let name = if taken.contains(&base) {
            (2..).map(|k| format!("{base}{k}")).find(|n| !taken.contains(n)).expect("unbounded")
        } else {
            base
        };
        taken.push(name.clone());
        name
    };

    for c in &index_type.ctors {
        if let IndexSource::Param(param) = &c.source {
            cases.push(FoldCase {
                name: fresh_case(format!("var{}", capitalize(param)), &mut taken),
                index: IndexExpr::leaf(&c.name),
                pattern: ValuePattern::bind("l"),
                args: vec![ArgSpec { binder: "l".into(), kind: ArgKind::Raw(RawType::Param(param.clone())) }],
            });
        }
    }
    for member in &closure {
        let decl = p.decl(member).expect("closure members are declared");
        let ictor = index_type.ctor_for_type(member).expect("every member has an index constructor");
        let vars: Vec<IndexExpr> = (0..decl.arity()).map(|k| IndexExpr::Var(nth_name(&INDEX_VARS, k, "i"))).collect();
        let env: BTreeMap<String, IndexExpr> = decl.params.iter().cloned().zip(vars.iter().cloned()).collect();
        for ctor in &decl.constructors {
            let binders: Vec<String> = (0..ctor.arg_types.len()).map(|k| nth_name(&BINDERS, k, "v")).collect();
            let args = ctor
                .arg_types
                .iter()
                .zip(&binders)
                .map(|(t, b)| {
                    Ok(ArgSpec { binder: b.clone(), kind: ArgKind::Recursive(type_to_index(&index_type, t, &env)?) })
                })
                .collect::<Result<Vec<_>, DeriveError>>()?;
            cases.push(FoldCase {
                name: fresh_case(lower(&ctor.name), &mut taken),
                index: IndexExpr::Con(ictor.name.clone(), vars.clone()),
                pattern: ValuePattern::Con(
                    ctor.name.clone(),
                    binders.iter().map(|b| ValuePattern::Bind(b.clone())).collect(),
                ),
                args,
            });
        }
    }
    let spec = FoldSpec {
        name: format!("fold{root}"),
        family: Family::interpreted(h),
        index_var: "i".into(),
        subject_name: "l".into(),
        cases,
        style: SignatureStyle::Named,
        index_first: true,
        kind: FoldKind::Direct,
        root: Some(root.to_string()),
    };
    spec.validate()?;
    Ok(spec)
}

/// A hypothesis-bearing case of an induction principle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionCase {
    pub name: String,
    pub index_vars: Vec<String>,
    /// Binders passed explicitly (raw arguments).
    pub explicit: Vec<(String, RawType)>,
    /// Subterms carried as implicit bindings, each with its own hypothesis.
    pub hypotheses: Vec<(String, IndexExpr)>,
    pub conclusion_index: IndexExpr,
    pub conclusion: ValuePattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionSpec {
    pub name: String,
    pub fold: FoldSpec,
    pub cases: Vec<InductionCase>,
}

impl InductionSpec {
    /// Same clauses as the fold.
    pub fn equations(&self) -> Vec<Equation> {
        self.fold.equations()
    }
}

pub fn induction_name(fold_name: &str) -> String {
    match fold_name.strip_prefix("fold") {
        Some(rest) => format!("ind{rest}"),
        None => format!("ind_{fold_name}"),
    }
}

/// Generalizes the motive from indexes to (index, value) pairs; each
/// recursive argument becomes a hypothesis about the matching subterm.
pub fn derive_induction_spec(f: &FoldSpec) -> InductionSpec {
    let cases = f
        .cases
        .iter()
        .map(|c| InductionCase {
            name: c.name.clone(),
            index_vars: c.index_vars(),
            explicit: c
                .args
                .iter()
                .filter_map(|a| match &a.kind {
                    ArgKind::Raw(r) => Some((a.binder.clone(), r.clone())),
                    ArgKind::Recursive(_) => None,
                })
                .collect(),
            hypotheses: c.recursive_args().map(|(b, i)| (b.to_string(), i.clone())).collect(),
            conclusion_index: c.index.clone(),
            conclusion: c.pattern.clone(),
        })
        .collect();
    InductionSpec { name: induction_name(&f.name), fold: f.clone(), cases }
}

/// Per-case action of the generic map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapAction {
    /// Apply the supplied function for this parameter to the raw leaf.
    ApplyLeaf(String),
    /// Rebuild the matched constructor around the recursive results.
    Rebuild,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub name: String,
    pub fold: FoldSpec,
    pub actions: Vec<(String, MapAction)>,
}

pub fn map_name(fold_name: &str) -> String {
    match fold_name.strip_prefix("fold") {
        Some(rest) => format!("map{rest}"),
        None => format!("map_{fold_name}"),
    }
}

/// Leaves every constructor unchanged and applies a per-parameter function
/// at parameter leaves.
pub fn derive_map_spec(f: &FoldSpec) -> MapSpec {
    let actions = f
        .cases
        .iter()
        .map(|c| {
            let action = match (&c.pattern, c.args.first().map(|a| &a.kind)) {
                (ValuePattern::Bind(_), Some(ArgKind::Raw(RawType::Param(p)))) => MapAction::ApplyLeaf(p.clone()),
                _ => MapAction::Rebuild,
            };
            (c.name.clone(), action)
        })
        .collect();
    MapSpec { name: map_name(&f.name), fold: f.clone(), actions }
}
