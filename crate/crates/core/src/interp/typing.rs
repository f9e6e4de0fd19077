//! Value/index conformance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::value::{Ground, Value};
use crate::derive::{ArgKind, DeriveError, Family, IndexExpr, IndexedRepDecl, InterpretationFn, RawType, TypeTemplate};
use crate::syntax::{Program, TypeExpr};

/// A finite (or, for literals, unbounded) set of ground values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CarrierSet {
    Finite { type_name: String, values: Vec<Ground> },
    AllNats,
    AllChars,
    AllText,
}

impl CarrierSet {
    /// Naturals below `k`.
    pub fn nats(k: u64) -> Self {
        CarrierSet::Finite { type_name: "Nat".into(), values: (0..k).map(Ground::Nat).collect() }
    }

    pub fn chars(cs: &[char]) -> Self {
        CarrierSet::Finite { type_name: "Char".into(), values: cs.iter().copied().map(Ground::Char).collect() }
    }

    pub fn texts(ts: &[&str]) -> Self {
        CarrierSet::Finite {
            type_name: "String".into(),
            values: ts.iter().map(|t| Ground::Text(t.to_string())).collect(),
        }
    }

    pub fn type_name(&self) -> &str {
        match self {
            CarrierSet::Finite { type_name, .. } => type_name,
            CarrierSet::AllNats => "Nat",
            CarrierSet::AllChars => "Char",
            CarrierSet::AllText => "String",
        }
    }

    pub fn contains(&self, g: &Ground) -> bool {
        match (self, g) {
            (CarrierSet::Finite { values, .. }, _) => values.contains(g),
            (CarrierSet::AllNats, Ground::Nat(_)) | (CarrierSet::AllChars, Ground::Char(_)) => true,
            (CarrierSet::AllText, Ground::Text(_)) => true,
            _ => false,
        }
    }

    /// Elements in order; `None` for unbounded sets.
    pub fn elements(&self) -> Option<&[Ground]> {
        match self {
            CarrierSet::Finite { values, .. } => Some(values),
            _ => None,
        }
    }
}

/// One carrier set per family parameter.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Carriers {
    pub sets: BTreeMap<String, CarrierSet>,
}

impl Carriers {
    pub fn new() -> Self {
        Carriers::default()
    }

    pub fn with(mut self, param: &str, set: CarrierSet) -> Self {
        self.sets.insert(param.to_string(), set);
        self
    }

    pub fn get(&self, param: &str) -> Option<&CarrierSet> {
        self.sets.get(param)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("`{value}` does not inhabit `{ty}`")]
    WrongConstructor { value: String, ty: String },
    #[error("ground value `{value}` where `{ty}` was expected")]
    ExpectedConstructor { value: String, ty: String },
    #[error("constructor value `{value}` where carrier `{param}` was expected")]
    ExpectedGround { value: String, param: String },
    #[error("`{value}` is outside the carrier of `{param}`")]
    OutsideCarrier { value: String, param: String },
    #[error("no carrier given for parameter `{0}`")]
    NoCarrier(String),
    #[error("`{ctor}` takes {expected} argument(s), found {found}")]
    Arity { ctor: String, expected: usize, found: usize },
    #[error("`{ctor}` cannot build a value at index `{index}`")]
    WrongIndex { ctor: String, index: String },
    #[error(transparent)]
    Derive(#[from] DeriveError),
}

/// A type whose interpretation parts are unfolded on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
enum LType {
    Param(String),
    App(String, Vec<LType>),
    Interp(IndexExpr),
}

fn of_template(t: &TypeTemplate, holes: &[IndexExpr]) -> LType {
    match t {
        TypeTemplate::Param(p) => LType::Param(p.clone()),
        TypeTemplate::Hole(k) => LType::Interp(holes[*k].clone()),
        TypeTemplate::App(c, args) => LType::App(c.clone(), args.iter().map(|a| of_template(a, holes)).collect()),
    }
}

fn of_type(t: &TypeExpr, env: &BTreeMap<String, LType>) -> LType {
    match t {
        TypeExpr::Var(v) => env.get(v).cloned().unwrap_or_else(|| LType::Param(v.clone())),
        TypeExpr::App(c, args) => LType::App(c.clone(), args.iter().map(|a| of_type(a, env)).collect()),
        TypeExpr::Arrow(..) => unreachable!("kind checking rejects function arguments"),
    }
}

fn render(t: &LType) -> String {
    match t {
        LType::Param(p) => p.clone(),
        LType::Interp(i) => format!("⟦{i}⟧"),
        LType::App(c, args) => std::iter::once(c.clone())
            .chain(args.iter().map(|a| match a {
                LType::App(_, xs) if !xs.is_empty() => format!("({})", render(a)),
                _ => render(a),
            }))
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn check_ground(carriers: &Carriers, param: &str, v: &Value) -> Result<(), TypeError> {
    match v {
        Value::Ground(g) => {
            let set = carriers.get(param).ok_or_else(|| TypeError::NoCarrier(param.to_string()))?;
            if set.contains(g) {
                Ok(())
            } else {
                Err(TypeError::OutsideCarrier { value: v.to_string(), param: param.to_string() })
            }
        }
        Value::Con(..) => Err(TypeError::ExpectedGround { value: v.to_string(), param: param.to_string() }),
    }
}

fn check_lazy(
    prog: &Program,
    h: &InterpretationFn,
    carriers: &Carriers,
    ty: &LType,
    v: &Value,
) -> Result<(), TypeError> {
    match ty {
        LType::Param(p) => check_ground(carriers, p, v),
        LType::Interp(i) => match i {
            IndexExpr::Var(x) => Err(DeriveError::FreeIndexVariable(x.clone()).into()),
            IndexExpr::Con(c, args) => {
                let rule = h.rule(c).ok_or_else(|| DeriveError::UnknownIndexConstructor(c.clone()))?;
                check_lazy(prog, h, carriers, &of_template(&rule.rhs, args), v)
            }
        },
        LType::App(t, targs) => {
            let (c, kids) = match v {
                Value::Con(c, kids) => (c, kids),
                Value::Ground(_) => {
                    return Err(TypeError::ExpectedConstructor { value: v.to_string(), ty: render(ty) })
                }
            };
            let decl = prog.decl(t).ok_or_else(|| DeriveError::OutOfClosure(t.clone()))?;
            let ctor = decl
                .constructor(c)
                .ok_or_else(|| TypeError::WrongConstructor { value: v.to_string(), ty: render(ty) })?;
            if ctor.arg_types.len() != kids.len() {
                return Err(TypeError::Arity { ctor: c.clone(), expected: ctor.arg_types.len(), found: kids.len() });
            }
            let env: BTreeMap<String, LType> = decl.params.iter().cloned().zip(targs.iter().cloned()).collect();
            ctor.arg_types.iter().zip(kids).try_for_each(|(at, k)| check_lazy(prog, h, carriers, &of_type(at, &env), k))
        }
    }
}

fn check_rep(
    prog: &Program,
    rep: &IndexedRepDecl,
    carriers: &Carriers,
    index: &IndexExpr,
    v: &Value,
) -> Result<(), TypeError> {
    let (c, kids) = match v {
        Value::Con(c, kids) => (c, kids),
        Value::Ground(_) => {
            return Err(TypeError::ExpectedConstructor { value: v.to_string(), ty: format!("{} {index}", rep.name) })
        }
    };
    let ctor = rep
        .ctor(c)
        .ok_or_else(|| TypeError::WrongConstructor { value: v.to_string(), ty: format!("{} {index}", rep.name) })?;
    if ctor.args.len() != kids.len() {
        return Err(TypeError::Arity { ctor: c.clone(), expected: ctor.args.len(), found: kids.len() });
    }
    let mut env = BTreeMap::new();
    if !ctor.index.match_closed(index, &mut env) {
        return Err(TypeError::WrongIndex { ctor: c.clone(), index: index.to_string() });
    }
    for (arg, k) in ctor.args.iter().zip(kids) {
        match &arg.kind {
            ArgKind::Recursive(i) => check_rep(prog, rep, carriers, &i.substitute(&env), k)?,
            ArgKind::Raw(RawType::Param(p)) => check_ground(carriers, p, k)?,
            ArgKind::Raw(RawType::Interp(i)) => {
                check_lazy(prog, &rep.source_interp, carriers, &LType::Interp(i.substitute(&env)), k)?
            }
        }
    }
    Ok(())
}

/// Accepts iff `v` inhabits the family at the closed index `index`, with
/// parameters ranging over `carriers`. The interpretation is unfolded only
/// as far as the value's shape demands.
pub fn check_value(
    prog: &Program,
    family: &Family,
    index: &IndexExpr,
    carriers: &Carriers,
    v: &Value,
) -> Result<(), TypeError> {
    if let Some(x) = index.vars().into_iter().next() {
        return Err(DeriveError::FreeIndexVariable(x).into());
    }
    match family {
        Family::Interpreted { interp, wrap } => {
            let ty = match wrap {
                Some(w) => of_template(w, std::slice::from_ref(index)),
                None => LType::Interp(index.clone()),
            };
            check_lazy(prog, interp, carriers, &ty, v)
        }
        Family::Indexed(rep) => check_rep(prog, rep, carriers, index, v),
    }
}

/// The family's fully expanded type at a closed index, parameters left as
/// type variables.
pub fn expand_type(family: &Family, index: &IndexExpr) -> Result<TypeExpr, TypeError> {
    Ok(family.subject_type(index)?)
}

/// Checks against an already expanded type.
pub fn check_against_type(prog: &Program, ty: &TypeExpr, carriers: &Carriers, v: &Value) -> Result<(), TypeError> {
    match (ty, v) {
        (TypeExpr::Var(p), _) => check_ground(carriers, p, v),
        (TypeExpr::App(t, targs), Value::Con(c, kids)) => {
            let decl = prog.decl(t).ok_or_else(|| DeriveError::OutOfClosure(t.clone()))?;
            let ctor = decl
                .constructor(c)
                .ok_or_else(|| TypeError::WrongConstructor { value: v.to_string(), ty: ty.to_string() })?;
            if ctor.arg_types.len() != kids.len() {
                return Err(TypeError::Arity { ctor: c.clone(), expected: ctor.arg_types.len(), found: kids.len() });
            }
            let env: BTreeMap<String, TypeExpr> = decl.params.iter().cloned().zip(targs.iter().cloned()).collect();
            ctor.arg_types
                .iter()
                .zip(kids)
                .try_for_each(|(at, k)| check_against_type(prog, &at.substitute(&env), carriers, k))
        }
        (TypeExpr::App(..), Value::Ground(_)) => {
            Err(TypeError::ExpectedConstructor { value: v.to_string(), ty: ty.to_string() })
        }
        (TypeExpr::Arrow(..), _) => Err(TypeError::WrongConstructor { value: v.to_string(), ty: ty.to_string() }),
    }
}
