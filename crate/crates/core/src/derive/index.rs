//! Regular index types that name the shapes arising inside a nested family,
//! and the interpretation functions that turn an index back into a type.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::DeriveError;
use crate::syntax::{reachability_closure, Program, TypeExpr};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndexExpr {
    /// A schematic index variable (`i`, `j`, `n`, ...).
    Var(String),
    Con(String, Vec<IndexExpr>),
}

impl IndexExpr {
    pub fn var(name: &str) -> Self {
        IndexExpr::Var(name.to_string())
    }

    pub fn con(name: &str, args: Vec<IndexExpr>) -> Self {
        IndexExpr::Con(name.to_string(), args)
    }

    pub fn leaf(name: &str) -> Self {
        IndexExpr::Con(name.to_string(), Vec::new())
    }

    /// `S (S ... Z)` with `n` successors.
    pub fn nat(n: usize) -> Self {
        (0..n).fold(IndexExpr::leaf("Z"), |acc, _| IndexExpr::con("S", vec![acc]))
    }

    /// `S^k base`.
    pub fn succs(k: usize, base: IndexExpr) -> Self {
        (0..k).fold(base, |acc, _| IndexExpr::con("S", vec![acc]))
    }

    pub fn as_nat(&self) -> Option<usize> {
        match self {
            IndexExpr::Con(c, args) if c == "Z" && args.is_empty() => Some(0),
            IndexExpr::Con(c, args) if c == "S" && args.len() == 1 => args[0].as_nat().map(|n| n + 1),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            IndexExpr::Var(_) => false,
            IndexExpr::Con(_, args) => args.iter().all(IndexExpr::is_closed),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            IndexExpr::Var(_) => 1,
            IndexExpr::Con(_, args) => 1 + args.iter().map(IndexExpr::depth).max().unwrap_or(0),
        }
    }

    /// Variables in left-to-right order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        fn go(e: &IndexExpr, out: &mut Vec<String>) {
            match e {
                IndexExpr::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                IndexExpr::Con(_, args) => args.iter().for_each(|a| go(a, out)),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn contains_con(&self, name: &str) -> bool {
        match self {
            IndexExpr::Var(_) => false,
            IndexExpr::Con(c, args) => c == name || args.iter().any(|a| a.contains_con(name)),
        }
    }

    pub fn substitute(&self, env: &BTreeMap<String, IndexExpr>) -> IndexExpr {
        match self {
            IndexExpr::Var(v) => env.get(v).cloned().unwrap_or_else(|| self.clone()),
            IndexExpr::Con(c, args) => IndexExpr::Con(c.clone(), args.iter().map(|a| a.substitute(env)).collect()),
        }
    }

    pub fn rename_cons(&self, map: &BTreeMap<String, String>) -> IndexExpr {
        match self {
            IndexExpr::Var(_) => self.clone(),
            IndexExpr::Con(c, args) => IndexExpr::Con(
                map.get(c).cloned().unwrap_or_else(|| c.clone()),
                args.iter().map(|a| a.rename_cons(map)).collect(),
            ),
        }
    }

    pub fn rename_vars(&self, map: &BTreeMap<String, String>) -> IndexExpr {
        match self {
            IndexExpr::Var(v) => IndexExpr::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            IndexExpr::Con(c, args) => IndexExpr::Con(c.clone(), args.iter().map(|a| a.rename_vars(map)).collect()),
        }
    }

    /// One-way matching of a schematic pattern against a closed index.
    pub fn match_closed(&self, closed: &IndexExpr, env: &mut BTreeMap<String, IndexExpr>) -> bool {
        match (self, closed) {
            (IndexExpr::Var(v), _) => match env.get(v) {
                Some(bound) => bound == closed,
                None => {
                    env.insert(v.clone(), closed.clone());
                    true
                }
            },
            (IndexExpr::Con(c, args), IndexExpr::Con(d, cargs)) => {
                c == d && args.len() == cargs.len() && args.iter().zip(cargs).all(|(a, b)| a.match_closed(b, env))
            }
            (IndexExpr::Con(..), IndexExpr::Var(_)) => false,
        }
    }

    fn is_atomic(&self) -> bool {
        match self {
            IndexExpr::Var(_) => true,
            IndexExpr::Con(_, args) => args.is_empty(),
        }
    }

    pub fn to_atom_string(&self) -> String {
        if self.is_atomic() {
            self.to_string()
        } else {
            format!("({self})")
        }
    }
}

impl fmt::Display for IndexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexExpr::Var(v) => f.write_str(v),
            IndexExpr::Con(c, args) => {
                f.write_str(c)?;
                for a in args {
                    write!(f, " {}", a.to_atom_string())?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexSource {
    /// Stands for a parameter of the root type.
    Param(String),
    /// Stands for a type constructor of the closure.
    Type(String),
    /// Hand-written index types such as `Nat`.
    Builtin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexCtor {
    pub name: String,
    pub arity: usize,
    pub source: IndexSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexTypeDecl {
    pub name: String,
    pub ctors: Vec<IndexCtor>,
}

impl IndexTypeDecl {
    /// The natural numbers, used by the hand-written folds.
    pub fn nat() -> Self {
        IndexTypeDecl {
            name: "Nat".into(),
            ctors: vec![
                IndexCtor { name: "Z".into(), arity: 0, source: IndexSource::Builtin },
                IndexCtor { name: "S".into(), arity: 1, source: IndexSource::Builtin },
            ],
        }
    }

    pub fn ctor(&self, name: &str) -> Option<&IndexCtor> {
        self.ctors.iter().find(|c| c.name == name)
    }

    pub fn ctor_for_type(&self, ty: &str) -> Option<&IndexCtor> {
        self.ctors.iter().find(|c| matches!(&c.source, IndexSource::Type(t) if t == ty))
    }

    pub fn ctor_for_param(&self, param: &str) -> Option<&IndexCtor> {
        self.ctors.iter().find(|c| matches!(&c.source, IndexSource::Param(p) if p == param))
    }

    /// Every closed index of depth at most `depth`, shallowest first.
    pub fn enumerate(&self, depth: usize) -> Vec<IndexExpr> {
        let mut all: Vec<IndexExpr> = Vec::new();
        for d in 1..=depth {
            let mut fresh = Vec::new();
            for c in &self.ctors {
                if c.arity == 0 {
                    if d == 1 {
                        fresh.push(IndexExpr::leaf(&c.name));
                    }
                    continue;
                }
                // at least one argument must have depth exactly d - 1
                let below: Vec<IndexExpr> = all.clone();
                let mut combos: Vec<Vec<IndexExpr>> = vec![Vec::new()];
                for _ in 0..c.arity {
                    combos = combos
                        .into_iter()
                        .flat_map(|pre| {
                            below.iter().map(move |b| {
                                let mut v = pre.clone();
                                v.push(b.clone());
                                v
                            })
                        })
                        .collect();
                }
                for args in combos {
                    if args.iter().any(|a| a.depth() == d - 1) {
                        fresh.push(IndexExpr::Con(c.name.clone(), args));
                    }
                }
            }
            all.extend(fresh);
        }
        all
    }
}

fn capitalize(s: &str) -> String {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

/// One nullary index constructor per root parameter (`VarA`, `VarB`, ...)
/// followed by one constructor per closure member (`IsD`, `IsI`, ...).
pub fn derive_index_type(p: &Program, root: &str) -> Result<IndexTypeDecl, DeriveError> {
    let closure = reachability_closure(p, root)?;
    let root_decl = p.decl(root).expect("closure checked the root");
    let mut ctors: Vec<IndexCtor> = Vec::new();
    let fresh = |base: String, ctors: &Vec<IndexCtor>| {
        if !ctors.iter().any(|c| c.name == base) {
            return base;
        }
        (2..).map(|k| format!("{base}{k}")).find(|n| !ctors.iter().any(|c| &c.name == n)).expect("unbounded suffixes")
    };
    for param in &root_decl.params {
        let name = fresh(format!("Var{}", capitalize(param)), &ctors);
        ctors.push(IndexCtor { name, arity: 0, source: IndexSource::Param(param.clone()) });
    }
    for member in &closure {
        let decl = p.decl(member).expect("closure members are declared");
        let name = fresh(format!("Is{member}"), &ctors);
        ctors.push(IndexCtor { name, arity: decl.arity(), source: IndexSource::Type(member.clone()) });
    }
    Ok(IndexTypeDecl { name: format!("Index{root}"), ctors })
}

/// Structural translation of a type into an index: parameters via `env`,
/// closure members via their `Is*` constructor.
pub fn type_to_index(
    index: &IndexTypeDecl,
    ty: &TypeExpr,
    env: &BTreeMap<String, IndexExpr>,
) -> Result<IndexExpr, DeriveError> {
    match ty {
        TypeExpr::Var(v) => env.get(v).cloned().ok_or_else(|| DeriveError::UnboundParameter(v.clone())),
        TypeExpr::App(con, args) => {
            let ctor = index.ctor_for_type(con).ok_or_else(|| DeriveError::OutOfClosure(con.clone()))?;
            let args = args.iter().map(|a| type_to_index(index, a, env)).collect::<Result<Vec<_>, _>>()?;
            Ok(IndexExpr::Con(ctor.name.clone(), args))
        }
        TypeExpr::Arrow(..) => Err(DeriveError::OutOfClosure(ty.to_string())),
    }
}

/// A type with holes, used as the right-hand side of an interpretation rule.
/// `Hole(k)` stands for the interpretation of the rule's `k`-th index argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeTemplate {
    Param(String),
    Hole(usize),
    App(String, Vec<TypeTemplate>),
}

impl TypeTemplate {
    pub fn app(con: &str, args: Vec<TypeTemplate>) -> Self {
        TypeTemplate::App(con.to_string(), args)
    }

    pub fn instantiate(&self, params: &BTreeMap<String, TypeExpr>, holes: &[TypeExpr]) -> TypeExpr {
        match self {
            TypeTemplate::Param(p) => params.get(p).cloned().unwrap_or_else(|| TypeExpr::Var(p.clone())),
            TypeTemplate::Hole(k) => holes[*k].clone(),
            TypeTemplate::App(c, args) => {
                TypeExpr::App(c.clone(), args.iter().map(|a| a.instantiate(params, holes)).collect())
            }
        }
    }

    /// Renders with each hole replaced by `hole(k)`.
    pub fn render(&self, hole: &dyn Fn(usize) -> String) -> String {
        fn atom(t: &TypeTemplate, hole: &dyn Fn(usize) -> String) -> String {
            match t {
                TypeTemplate::App(_, args) if !args.is_empty() => format!("({})", t.render(hole)),
                _ => t.render(hole),
            }
        }
        match self {
            TypeTemplate::Param(p) => p.clone(),
            TypeTemplate::Hole(k) => hole(*k),
            TypeTemplate::App(c, args) => {
                let mut s = c.clone();
                for a in args {
                    s.push(' ');
                    s.push_str(&atom(a, hole));
                }
                s
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpretationRule {
    pub ctor: String,
    pub rhs: TypeTemplate,
}

/// A type-level function from a regular index type to types, given by one
/// rewrite rule per index constructor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpretationFn {
    pub name: String,
    pub index_type: IndexTypeDecl,
    pub params: Vec<String>,
    pub rules: Vec<InterpretationRule>,
}

impl InterpretationFn {
    /// The iterated-layer pattern: index `Z` is the carrier, `S n` wraps one
    /// more `layer` around the interpretation of `n`.
    pub fn ntimes(name: &str, param: &str, layer: TypeTemplate) -> Self {
        InterpretationFn {
            name: name.to_string(),
            index_type: IndexTypeDecl::nat(),
            params: vec![param.to_string()],
            rules: vec![
                InterpretationRule { ctor: "Z".into(), rhs: TypeTemplate::Param(param.to_string()) },
                InterpretationRule { ctor: "S".into(), rhs: layer },
            ],
        }
    }

    pub fn rule(&self, ctor: &str) -> Option<&InterpretationRule> {
        self.rules.iter().find(|r| r.ctor == ctor)
    }

    /// Fully evaluates the interpretation of a closed index. Parameters not
    /// mentioned in `params` stay as type variables.
    pub fn interpret(&self, index: &IndexExpr, params: &BTreeMap<String, TypeExpr>) -> Result<TypeExpr, DeriveError> {
        match index {
            IndexExpr::Var(v) => Err(DeriveError::FreeIndexVariable(v.clone())),
            IndexExpr::Con(c, args) => {
                let rule = self.rule(c).ok_or_else(|| DeriveError::UnknownIndexConstructor(c.clone()))?;
                let holes = args.iter().map(|a| self.interpret(a, params)).collect::<Result<Vec<_>, _>>()?;
                Ok(rule.rhs.instantiate(params, &holes))
            }
        }
    }

    /// Interpretation with the parameters left symbolic.
    pub fn interpret_symbolic(&self, index: &IndexExpr) -> Result<TypeExpr, DeriveError> {
        self.interpret(index, &BTreeMap::new())
    }

    /// Replaces the rule for `ctor` by an application of the abstract type
    /// variable `var`, keeping every other rule.
    pub fn abstract_ctor(&self, ctor: &str, var: &str, name: &str) -> InterpretationFn {
        let mut out = self.clone();
        out.name = name.to_string();
        for r in &mut out.rules {
            if r.ctor == ctor {
                let arity = self.index_type.ctor(ctor).map(|c| c.arity).unwrap_or(0);
                r.rhs = TypeTemplate::App(var.to_string(), (0..arity).map(TypeTemplate::Hole).collect());
            }
        }
        out
    }
}

/// The interpretation `H` of a derived index type: `Var_k` to the `k`-th
/// parameter, `Is_T x1 .. xn` to `T` applied to the interpreted arguments.
pub fn derive_interpretation(p: &Program, root: &str) -> Result<InterpretationFn, DeriveError> {
    let index_type = derive_index_type(p, root)?;
    let params = p.decl(root).expect("root checked").params.clone();
    let rules = index_type
        .ctors
        .iter()
        .map(|c| InterpretationRule {
            ctor: c.name.clone(),
            rhs: match &c.source {
                IndexSource::Param(p) => TypeTemplate::Param(p.clone()),
                IndexSource::Type(t) => TypeTemplate::App(t.clone(), (0..c.arity).map(TypeTemplate::Hole).collect()),
                IndexSource::Builtin => unreachable!("derived index types have no builtin constructors"),
            },
        })
        .collect();
    Ok(InterpretationFn { name: "H".into(), index_type, params, rules })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::load_program;

    fn d() -> Program {
        load_program(include_str!("../../../../programs/d.ndt")).unwrap()
    }

    fn env(pairs: &[(&str, IndexExpr)]) -> BTreeMap<String, IndexExpr> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    fn ctor_sig(t: &IndexTypeDecl) -> Vec<(String, usize)> {
        t.ctors.iter().map(|c| (c.name.clone(), c.arity)).collect()
    }

    #[test]
    fn index_type_for_d() {
        let t = derive_index_type(&d(), "D").unwrap();
        assert_eq!(t.name, "IndexD");
        assert_eq!(ctor_sig(&t), vec![("VarA".into(), 0), ("VarB".into(), 0), ("IsD".into(), 2), ("IsI".into(), 1)]);
    }

    #[test]
    fn index_type_for_bush_and_list() {
        let bush = load_program(include_str!("../../../../programs/bush.ndt")).unwrap();
        assert_eq!(
            ctor_sig(&derive_index_type(&bush, "Bush").unwrap()),
            vec![("VarA".into(), 0), ("IsBush".into(), 1)]
        );
        let list = load_program(include_str!("../../../../programs/list.ndt")).unwrap();
        assert_eq!(
            ctor_sig(&derive_index_type(&list, "List").unwrap()),
            vec![("VarA".into(), 0), ("IsList".into(), 1)]
        );
    }

    #[test]
    fn name_collisions_get_suffix() {
        let p = load_program("data T (a A) where\n  C : T a A\n").unwrap();
        let t = derive_index_type(&p, "T").unwrap();
        assert_eq!(ctor_sig(&t), vec![("VarA".into(), 0), ("VarA2".into(), 0), ("IsT".into(), 2)]);
    }

    #[test]
    fn interpret_h() {
        let h = derive_interpretation(&d(), "D").unwrap();
        let i = IndexExpr::con(
            "IsD",
            vec![
                IndexExpr::con(
                    "IsI",
                    vec![IndexExpr::con(
                        "IsD",
                        vec![
                            IndexExpr::con("IsI", vec![IndexExpr::leaf("VarA")]),
                            IndexExpr::con("IsI", vec![IndexExpr::leaf("VarB")]),
                        ],
                    )],
                ),
                IndexExpr::con("IsI", vec![IndexExpr::leaf("VarA")]),
            ],
        );
        let sigma: BTreeMap<String, TypeExpr> =
            [("a".to_string(), TypeExpr::con("Nat")), ("b".to_string(), TypeExpr::con("Char"))].into();
        assert_eq!(h.interpret(&i, &sigma).unwrap().to_string(), "D (I (D (I Nat) (I Char))) (I Nat)");
        assert_eq!(h.interpret(&IndexExpr::leaf("VarA"), &sigma).unwrap().to_string(), "Nat");
        assert!(matches!(h.interpret(&IndexExpr::var("i"), &sigma), Err(DeriveError::FreeIndexVariable(_))));
    }

    #[test]
    fn ntimes_interpretation() {
        let nbush = InterpretationFn::ntimes("NBush", "a", TypeTemplate::app("Bush", vec![TypeTemplate::Hole(0)]));
        let sigma: BTreeMap<String, TypeExpr> = [("a".to_string(), TypeExpr::con("Nat"))].into();
        assert_eq!(nbush.interpret(&IndexExpr::nat(2), &sigma).unwrap().to_string(), "Bush (Bush Nat)");
    }

    #[test]
    fn type_to_index_examples() {
        let t = derive_index_type(&d(), "D").unwrap();
        let e = env(&[("a", IndexExpr::var("i")), ("b", IndexExpr::var("j"))]);
        let p = d();
        let dcons = p.decl("D").unwrap().constructor("DCons").unwrap();
        assert_eq!(
            type_to_index(&t, &dcons.arg_types[3], &e).unwrap().to_string(),
            "IsD (IsD (IsI j) (IsI j)) (IsI i)"
        );
        assert_eq!(type_to_index(&t, &TypeExpr::var("a"), &e).unwrap(), IndexExpr::var("i"));
        let acons = p.decl("D").unwrap().constructor("ACons").unwrap();
        assert_eq!(
            type_to_index(&t, &acons.arg_types[1], &e).unwrap().to_string(),
            "IsD (IsI (IsI (IsD j i))) (IsD (IsD j i) (IsD i j))"
        );
        assert!(matches!(
            type_to_index(&t, &TypeExpr::app("Bush", vec![TypeExpr::var("a")]), &e),
            Err(DeriveError::OutOfClosure(_))
        ));
    }

    #[test]
    fn round_trip_on_every_constructor_argument() {
        for src in [
            include_str!("../../../../programs/d.ndt"),
            include_str!("../../../../programs/bush.ndt"),
            include_str!("../../../../programs/term.ndt"),
            include_str!("../../../../programs/terme.ndt"),
        ] {
            let p = load_program(src).unwrap();
            for root in p.decls.iter().map(|d| d.name.clone()) {
                let t = derive_index_type(&p, &root).unwrap();
                let h = derive_interpretation(&p, &root).unwrap();
                let root_params = &p.decl(&root).unwrap().params;
                let env: BTreeMap<String, IndexExpr> = t
                    .ctors
                    .iter()
                    .filter_map(|c| match &c.source {
                        IndexSource::Param(p) => Some((p.clone(), IndexExpr::leaf(&c.name))),
                        _ => None,
                    })
                    .collect();
                let decl = p.decl(&root).unwrap();
                for ctor in &decl.constructors {
                    for arg in &ctor.arg_types {
                        let i = type_to_index(&t, arg, &env).unwrap();
                        let back = h.interpret_symbolic(&i).unwrap();
                        assert_eq!(&back, arg, "{root}: {arg}");
                    }
                }
                assert_eq!(root_params.len(), env.len());
            }
        }
    }

    #[test]
    fn enumerate_index_depths() {
        let t = derive_index_type(&d(), "D").unwrap();
        assert_eq!(t.enumerate(1).len(), 2);
        assert_eq!(t.enumerate(2).len(), 2 + 4 + 2);
        assert_eq!(t.enumerate(3).len(), 8 + 64 - 4 + 8 - 2);
        let nat = IndexTypeDecl::nat();
        assert_eq!(nat.enumerate(4), (0..4).map(IndexExpr::nat).collect::<Vec<_>>());
    }

    #[test]
    fn abstracting_root_keeps_other_rules() {
        let h = derive_interpretation(&d(), "D").unwrap();
        let hp = h.abstract_ctor("IsD", "p", "Hp");
        for i in derive_index_type(&d(), "D").unwrap().enumerate(3) {
            if !i.contains_con("IsD") {
                assert_eq!(h.interpret_symbolic(&i).unwrap(), hp.interpret_symbolic(&i).unwrap());
            }
        }
        let i = IndexExpr::con("IsD", vec![IndexExpr::leaf("VarA"), IndexExpr::leaf("VarB")]);
        assert_eq!(hp.interpret_symbolic(&i).unwrap().to_string(), "p a b");
    }
}
