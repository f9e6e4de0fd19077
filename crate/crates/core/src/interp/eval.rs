//! Structurally recursive evaluation of fold specs.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use thiserror::Error;

use super::trace::note;
use super::typing::TypeError;
use super::value::Value;
use crate::derive::{
    derive_map_spec, ArgKind, DeriveError, FoldCase, FoldSpec, IndexExpr, MapAction, RawType, Template, ValuePattern,
};
use crate::syntax::{Program, TypeExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("algebra has no entry for case `{0}`")]
    MissingCase(String),
    #[error("algebra entry `{0}` is not a case of the fold")]
    ExtraCase(String),
    #[error("`{fold}` has no case for `{value}` at index `{index}`")]
    NoMatchingCase { fold: String, index: String, value: String },
    #[error("unknown algebra function `{0}`")]
    UnknownFunction(String),
    #[error("native function `{key}` failed: {msg}")]
    Native { key: String, msg: String },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
}

impl EvalError {
    pub fn native(key: &str, msg: impl Into<String>) -> Self {
        EvalError::Native { key: key.to_string(), msg: msg.into() }
    }
}

/// An argument handed to a case: a raw child or a recursive result.
#[derive(Debug, Clone)]
pub enum Arg<'a, T> {
    Raw(&'a Value),
    Rec(T),
}

/// Everything a case receives: the instantiation of its index variables
/// and its arguments in binder order.
#[derive(Debug, Clone)]
pub struct CaseArgs<'a, T> {
    pub index: &'a IndexExpr,
    pub env: &'a BTreeMap<String, IndexExpr>,
    pub args: Vec<Arg<'a, T>>,
}

impl<T> CaseArgs<'_, T> {
    /// An index variable read as a natural number.
    pub fn nat(&self, var: &str) -> Result<u64, EvalError> {
        self.env
            .get(var)
            .and_then(IndexExpr::as_nat)
            .map(|n| n as u64)
            .ok_or_else(|| EvalError::native(var, "index variable is not a natural number"))
    }
}

impl CaseArgs<'_, Value> {
    pub fn value(&self, k: usize) -> &Value {
        match &self.args[k] {
            Arg::Raw(v) => v,
            Arg::Rec(v) => v,
        }
    }

    pub fn values(&self) -> Vec<Value> {
        (0..self.args.len()).map(|k| self.value(k).clone()).collect()
    }

    pub fn nat_arg(&self, k: usize) -> Result<u64, EvalError> {
        self.value(k).as_nat().ok_or_else(|| EvalError::native("arg", format!("`{}` is not a natural", self.value(k))))
    }
}

/// The runtime meaning of a fold's case arguments.
pub trait FoldAlgebra {
    type Out;

    fn case(&self, case: &FoldCase, args: CaseArgs<'_, Self::Out>) -> Result<Self::Out, EvalError>;

    /// Checked once before evaluation.
    fn covers(&self, _spec: &FoldSpec) -> Result<(), EvalError> {
        Ok(())
    }
}

/// An algebra given by a closure, for motives that are not plain values.
pub struct ClosureAlgebra<T, F> {
    f: F,
    _out: PhantomData<fn() -> T>,
}

impl<T, F> ClosureAlgebra<T, F>
where
    F: Fn(&FoldCase, CaseArgs<'_, T>) -> Result<T, EvalError>,
{
    pub fn new(f: F) -> Self {
        ClosureAlgebra { f, _out: PhantomData }
    }
}

impl<T, F> FoldAlgebra for ClosureAlgebra<T, F>
where
    F: Fn(&FoldCase, CaseArgs<'_, T>) -> Result<T, EvalError>,
{
    type Out = T;

    fn case(&self, case: &FoldCase, args: CaseArgs<'_, T>) -> Result<T, EvalError> {
        (self.f)(case, args)
    }
}

pub type NativeFn = Arc<dyn Fn(&CaseArgs<'_, Value>) -> Result<Value, EvalError> + Send + Sync>;
pub type CallFn = Arc<dyn Fn(&[Value]) -> Result<Value, EvalError> + Send + Sync>;
pub type LeafFn = Arc<dyn Fn(&Value) -> Result<Value, EvalError> + Send + Sync>;

#[derive(Clone)]
pub enum CaseImpl {
    /// Rebuild from a template over the case binders.
    Replace(Template),
    Const(Value),
    /// A registered native function.
    Native(String, NativeFn),
}

impl fmt::Debug for CaseImpl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseImpl::Replace(t) => write!(f, "Replace({})", t.render(false)),
            CaseImpl::Const(v) => write!(f, "Const({v})"),
            CaseImpl::Native(k, _) => write!(f, "Native({k})"),
        }
    }
}

/// Value-valued algebra: one entry per case plus the functions that
/// `Call` templates may apply.
#[derive(Clone, Default)]
pub struct Algebra {
    pub cases: Vec<(String, CaseImpl)>,
    pub functions: BTreeMap<String, CallFn>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("cases", &self.cases)
            .field("functions", &self.functions.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl Algebra {
    pub fn new() -> Self {
        Algebra::default()
    }

    pub fn with(mut self, case: &str, imp: CaseImpl) -> Self {
        self.cases.retain(|(c, _)| c != case);
        self.cases.push((case.to_string(), imp));
        self
    }

    pub fn replace(self, case: &str, t: Template) -> Self {
        self.with(case, CaseImpl::Replace(t))
    }

    pub fn constant(self, case: &str, v: Value) -> Self {
        self.with(case, CaseImpl::Const(v))
    }

    pub fn native(
        self,
        case: &str,
        key: &str,
        f: impl Fn(&CaseArgs<'_, Value>) -> Result<Value, EvalError> + Send + Sync + 'static,
    ) -> Self {
        self.with(case, CaseImpl::Native(key.to_string(), Arc::new(f)))
    }

    pub fn function(
        mut self,
        name: &str,
        f: impl Fn(&[Value]) -> Result<Value, EvalError> + Send + Sync + 'static,
    ) -> Self {
        self.functions.insert(name.to_string(), Arc::new(f));
        self
    }

    pub fn get(&self, case: &str) -> Option<&CaseImpl> {
        self.cases.iter().find(|(c, _)| c == case).map(|(_, i)| i)
    }

    /// Rebuilds every case's own pattern.
    pub fn identity(spec: &FoldSpec) -> Self {
        spec.cases.iter().fold(Algebra::new(), |a, c| a.replace(&c.name, Template::of_pattern(&c.pattern)))
    }

    /// Case bodies given as templates, e.g. a derived conversion or recipe.
    pub fn from_templates(templates: &[(String, Template)]) -> Self {
        templates.iter().fold(Algebra::new(), |a, (c, t)| a.replace(c, t.clone()))
    }

    fn instantiate(&self, t: &Template, binders: &BTreeMap<&str, &Value>) -> Result<Value, EvalError> {
        match t {
            Template::Slot(s) => {
                binders.get(s.as_str()).map(|v| (*v).clone()).ok_or_else(|| EvalError::UnknownFunction(s.clone()))
            }
            Template::Ctor(c, args) => {
                Ok(Value::Con(c.clone(), args.iter().map(|a| self.instantiate(a, binders)).collect::<Result<_, _>>()?))
            }
            Template::Call(f, args) => {
                let fun = self.functions.get(f).ok_or_else(|| EvalError::UnknownFunction(f.clone()))?;
                let vals = args.iter().map(|a| self.instantiate(a, binders)).collect::<Result<Vec<_>, _>>()?;
                fun(&vals)
            }
        }
    }
}

impl FoldAlgebra for Algebra {
    type Out = Value;

    fn case(&self, case: &FoldCase, args: CaseArgs<'_, Value>) -> Result<Value, EvalError> {
        match self.get(&case.name).ok_or_else(|| EvalError::MissingCase(case.name.clone()))? {
            CaseImpl::Const(v) => Ok(v.clone()),
            CaseImpl::Native(_, f) => f(&args),
            CaseImpl::Replace(t) => {
                let binders: BTreeMap<&str, &Value> =
                    case.args.iter().enumerate().map(|(k, a)| (a.binder.as_str(), args.value(k))).collect();
                self.instantiate(t, &binders)
            }
        }
    }

    fn covers(&self, spec: &FoldSpec) -> Result<(), EvalError> {
        if let Some(c) = spec.cases.iter().find(|c| self.get(&c.name).is_none()) {
            return Err(EvalError::MissingCase(c.name.clone()));
        }
        if let Some((c, _)) = self.cases.iter().find(|(c, _)| spec.case(c).is_none()) {
            return Err(EvalError::ExtraCase(c.clone()));
        }
        Ok(())
    }
}

fn match_pattern<'a>(p: &ValuePattern, v: &'a Value, out: &mut Vec<&'a Value>) -> bool {
    match (p, v) {
        (ValuePattern::Bind(_), _) => {
            out.push(v);
            true
        }
        (ValuePattern::Con(c, ps), Value::Con(d, kids)) => {
            c == d && ps.len() == kids.len() && ps.iter().zip(kids).all(|(p, k)| match_pattern(p, k, out))
        }
        _ => false,
    }
}

/// Evaluates the fold at a closed index with any algebra. Cases are tried
/// in order; every recursive call is on a component of the matched value.
pub fn fold_with<A: FoldAlgebra>(spec: &FoldSpec, alg: &A, index: &IndexExpr, v: &Value) -> Result<A::Out, EvalError> {
    alg.covers(spec)?;
    if let Some(x) = index.vars().into_iter().next() {
        return Err(DeriveError::FreeIndexVariable(x).into());
    }
    go(spec, alg, index, v)
}

fn go<A: FoldAlgebra>(spec: &FoldSpec, alg: &A, index: &IndexExpr, v: &Value) -> Result<A::Out, EvalError> {
    for case in &spec.cases {
        let mut env = BTreeMap::new();
        if !case.index.match_closed(index, &mut env) {
            continue;
        }
        let mut parts = Vec::with_capacity(case.args.len());
        if !match_pattern(&case.pattern, v, &mut parts) {
            continue;
        }
        let mut args = Vec::with_capacity(parts.len());
        for (spec_arg, part) in case.args.iter().zip(parts) {
            args.push(match &spec_arg.kind {
                ArgKind::Raw(_) => Arg::Raw(part),
                ArgKind::Recursive(i) => {
                    let sub = i.substitute(&env);
                    note(&spec.name, part, &sub, v);
                    Arg::Rec(go(spec, alg, &sub, part)?)
                }
            });
        }
        return alg.case(case, CaseArgs { index, env: &env, args });
    }
    Err(EvalError::NoMatchingCase { fold: spec.name.clone(), index: index.to_string(), value: v.to_string() })
}

pub fn eval_fold(spec: &FoldSpec, alg: &Algebra, index: &IndexExpr, v: &Value) -> Result<Value, EvalError> {
    fold_with(spec, alg, index, v)
}

/// Applies per-parameter functions at the carrier leaves of a value of a
/// known expanded type.
pub fn map_by_type(
    prog: &Program,
    ty: &TypeExpr,
    leaf_fns: &BTreeMap<String, LeafFn>,
    v: &Value,
) -> Result<Value, EvalError> {
    match (ty, v) {
        (TypeExpr::Var(p), _) => match leaf_fns.get(p) {
            Some(f) => f(v),
            None => Ok(v.clone()),
        },
        (TypeExpr::App(t, targs), Value::Con(c, kids)) => {
            let decl = prog.decl(t).ok_or_else(|| DeriveError::OutOfClosure(t.clone()))?;
            let ctor = decl
                .constructor(c)
                .ok_or_else(|| TypeError::WrongConstructor { value: v.to_string(), ty: ty.to_string() })?;
            let env: BTreeMap<String, TypeExpr> = decl.params.iter().cloned().zip(targs.iter().cloned()).collect();
            let kids = ctor
                .arg_types
                .iter()
                .zip(kids)
                .map(|(at, k)| map_by_type(prog, &at.substitute(&env), leaf_fns, k))
                .collect::<Result<_, _>>()?;
            Ok(Value::Con(c.clone(), kids))
        }
        _ => Err(TypeError::ExpectedConstructor { value: v.to_string(), ty: ty.to_string() }.into()),
    }
}

/// The generic map: constructors rebuilt, carrier leaves passed through the
/// function for their parameter.
pub fn eval_map(
    prog: &Program,
    spec: &FoldSpec,
    leaf_fns: &BTreeMap<String, LeafFn>,
    index: &IndexExpr,
    v: &Value,
) -> Result<Value, EvalError> {
    let map = derive_map_spec(spec);
    let actions: BTreeMap<String, MapAction> = map.actions.into_iter().collect();
    let interp = spec.family.interpretation().clone();
    let alg = ClosureAlgebra::new(|case: &FoldCase, args: CaseArgs<'_, Value>| {
        let mapped: Vec<Value> = case
            .args
            .iter()
            .zip(&args.args)
            .map(|(a, arg)| match (arg, &a.kind) {
                (Arg::Rec(r), _) => Ok(r.clone()),
                (Arg::Raw(x), ArgKind::Raw(RawType::Param(p))) => match leaf_fns.get(p) {
                    Some(f) => f(x),
                    None => Ok((*x).clone()),
                },
                (Arg::Raw(x), ArgKind::Raw(RawType::Interp(i))) => {
                    let ty = interp.interpret_symbolic(&i.substitute(args.env))?;
                    map_by_type(prog, &ty, leaf_fns, x)
                }
                (Arg::Raw(x), ArgKind::Recursive(_)) => Ok((*x).clone()),
            })
            .collect::<Result<_, EvalError>>()?;
        match actions.get(&case.name) {
            Some(MapAction::ApplyLeaf(_)) => Ok(mapped.into_iter().next().expect("leaf cases bind one value")),
            _ => {
                let binders: BTreeMap<&str, &Value> =
                    case.args.iter().zip(&mapped).map(|(a, v)| (a.binder.as_str(), v)).collect();
                Algebra::new().instantiate(&Template::of_pattern(&case.pattern), &binders)
            }
        }
    });
    fold_with(spec, &alg, index, v)
}

/// Semantic domain for motives whose values are functions, such as the
/// continuation motive `λa. (a → Nat) → Nat`.
#[derive(Clone)]
pub enum Sem {
    Val(Value),
    Fn(Arc<dyn Fn(Sem) -> Result<Sem, EvalError> + Send + Sync>),
}

impl fmt::Debug for Sem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sem::Val(v) => write!(f, "Val({v})"),
            Sem::Fn(_) => f.write_str("Fn(..)"),
        }
    }
}

impl Sem {
    pub fn func(f: impl Fn(Sem) -> Result<Sem, EvalError> + Send + Sync + 'static) -> Sem {
        Sem::Fn(Arc::new(f))
    }

    pub fn apply(&self, x: Sem) -> Result<Sem, EvalError> {
        match self {
            Sem::Fn(f) => f(x),
            Sem::Val(v) => Err(EvalError::native("apply", format!("`{v}` is not a function"))),
        }
    }

    pub fn value(self) -> Result<Value, EvalError> {
        match self {
            Sem::Val(v) => Ok(v),
            Sem::Fn(_) => Err(EvalError::native("value", "expected a value, found a function")),
        }
    }
}

pub type SemFn = Arc<dyn Fn(Vec<Sem>) -> Result<Sem, EvalError> + Send + Sync>;

fn instantiate_sem(
    t: &Template,
    binders: &BTreeMap<&str, Sem>,
    functions: &BTreeMap<String, SemFn>,
) -> Result<Sem, EvalError> {
    match t {
        Template::Slot(s) => binders.get(s.as_str()).cloned().ok_or_else(|| EvalError::UnknownFunction(s.clone())),
        Template::Ctor(c, args) => {
            let kids =
                args.iter().map(|a| instantiate_sem(a, binders, functions)?.value()).collect::<Result<Vec<_>, _>>()?;
            Ok(Sem::Val(Value::Con(c.clone(), kids)))
        }
        Template::Call(f, args) => {
            let fun = functions.get(f).ok_or_else(|| EvalError::UnknownFunction(f.clone()))?;
            fun(args.iter().map(|a| instantiate_sem(a, binders, functions)).collect::<Result<_, _>>()?)
        }
    }
}

/// Runs case templates (such as a higher-order fold recipe) in the
/// semantic domain, so algebra functions may return functions.
pub fn eval_templates_sem(
    spec: &FoldSpec,
    templates: &[(String, Template)],
    functions: &BTreeMap<String, SemFn>,
    index: &IndexExpr,
    v: &Value,
) -> Result<Sem, EvalError> {
    let table: BTreeMap<&str, &Template> = templates.iter().map(|(c, t)| (c.as_str(), t)).collect();
    if let Some(c) = spec.cases.iter().find(|c| !table.contains_key(c.name.as_str())) {
        return Err(EvalError::MissingCase(c.name.clone()));
    }
    let alg = ClosureAlgebra::new(|case: &FoldCase, args: CaseArgs<'_, Sem>| {
        let binders: BTreeMap<&str, Sem> = case
            .args
            .iter()
            .zip(args.args)
            .map(|(a, arg)| {
                let s = match arg {
                    Arg::Raw(x) => Sem::Val(x.clone()),
                    Arg::Rec(r) => r,
                };
                (a.binder.as_str(), s)
            })
            .collect();
        instantiate_sem(table[case.name.as_str()], &binders, functions)
    });
    fold_with(spec, &alg, index, v)
}
