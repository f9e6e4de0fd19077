//! Specialization of a dependently typed fold to the higher-order fold.

use serde::{Deserialize, Serialize};

use super::fold::{Family, FoldSpec, Template, ValuePattern};
use super::index::{IndexExpr, InterpretationFn, InterpretationRule, TypeTemplate};
use super::DeriveError;
use crate::syntax::{Program, TypeExpr};

/// One argument of the higher-order fold, standing for a root constructor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HOArg {
    pub name: String,
    pub ctor: String,
    /// Constructor argument types with the root replaced by the motive.
    pub arg_types: Vec<TypeExpr>,
    pub result: TypeExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HOFoldSpec {
    pub name: String,
    pub base: FoldSpec,
    /// The motive family `i ↦ Hp i`.
    pub hp: Family,
    pub motive_var: String,
    pub root: String,
    pub root_params: Vec<String>,
    pub args: Vec<HOArg>,
    /// Index at which the subject type is the root applied to its parameters.
    pub start_index: IndexExpr,
    /// Case bodies: identity at leaves, the matching argument at root
    /// constructors, the constructor itself elsewhere.
    pub recipe: Vec<(String, Template)>,
}

impl HOFoldSpec {
    pub fn arg(&self, name: &str) -> Option<&HOArg> {
        self.args.iter().find(|a| a.name == name)
    }

    pub fn recipe_for(&self, case: &str) -> Option<&Template> {
        self.recipe.iter().find(|(c, _)| c == case).map(|(_, t)| t)
    }
}

pub(crate) fn rename_type_con(t: &TypeExpr, from: &str, to: &str) -> TypeExpr {
    match t {
        TypeExpr::Var(_) => t.clone(),
        TypeExpr::App(c, args) => TypeExpr::App(
            if c == from { to.to_string() } else { c.clone() },
            args.iter().map(|a| rename_type_con(a, from, to)).collect(),
        ),
        TypeExpr::Arrow(a, b) => {
            TypeExpr::Arrow(Box::new(rename_type_con(a, from, to)), Box::new(rename_type_con(b, from, to)))
        }
    }
}

fn rename_template_con(t: &TypeTemplate, from: &str, to: &str) -> TypeTemplate {
    match t {
        TypeTemplate::App(c, args) => TypeTemplate::App(
            if c == from { to.to_string() } else { c.clone() },
            args.iter().map(|a| rename_template_con(a, from, to)).collect(),
        ),
        _ => t.clone(),
    }
}

fn template_mentions(t: &TypeTemplate, con: &str) -> bool {
    match t {
        TypeTemplate::App(c, args) => c == con || args.iter().any(|a| template_mentions(a, con)),
        _ => false,
    }
}

/// The family with every occurrence of the root type constructor replaced
/// by the motive variable.
pub fn abstract_family(f: &Family, root: &str, var: &str) -> Result<Family, DeriveError> {
    match f {
        Family::Interpreted { interp, wrap } => {
            let in_rules = interp.rules.iter().any(|r| template_mentions(&r.rhs, root));
            if !in_rules && !wrap.as_ref().is_some_and(|w| template_mentions(w, root)) {
                return Err(DeriveError::NotProper(format!("the family never mentions `{root}`")));
            }
            let rules = interp
                .rules
                .iter()
                .map(|r| InterpretationRule { ctor: r.ctor.clone(), rhs: rename_template_con(&r.rhs, root, var) })
                .collect();
            Ok(Family::Interpreted {
                interp: if in_rules {
                    InterpretationFn { name: format!("{}{var}", interp.name), rules, ..interp.clone() }
                } else {
                    interp.clone()
                },
                wrap: wrap.as_ref().map(|w| rename_template_con(w, root, var)),
            })
        }
        Family::Indexed(rep) => Err(DeriveError::NotInterpreted(rep.name.clone())),
    }
}

/// Finds the shallowest closed index whose subject type is `root` applied
/// to its own parameters.
pub fn root_index(f: &FoldSpec, root_type: &TypeExpr) -> Result<IndexExpr, DeriveError> {
    f.family
        .index_type()
        .enumerate(4)
        .into_iter()
        .find(|i| f.family.subject_type(i).ok().as_ref() == Some(root_type))
        .ok_or_else(|| DeriveError::NotProper(format!("no index denotes `{root_type}`")))
}

fn recipe_of(p: &ValuePattern, root_ctors: &[(String, String)]) -> Template {
    match p {
        ValuePattern::Bind(b) => Template::Slot(b.clone()),
        ValuePattern::Con(c, args) => {
            let args = args.iter().map(|a| recipe_of(a, root_ctors)).collect();
            match root_ctors.iter().find(|(ctor, _)| ctor == c) {
                Some((_, arg)) => Template::Call(arg.clone(), args),
                None => Template::Ctor(c.clone(), args),
            }
        }
    }
}

/// Builds the higher-order fold of the spec's root type: motive
/// `λi. Hp i`, one argument per root constructor whose type is the
/// constructor's own with the root replaced by `p`.
pub fn derive_hofold(prog: &Program, f: &FoldSpec) -> Result<HOFoldSpec, DeriveError> {
    let root = f.root.clone().ok_or_else(|| DeriveError::NotProper(format!("`{}` has no root type", f.name)))?;
    let decl = prog.decl(&root).ok_or_else(|| DeriveError::OutOfClosure(root.clone()))?;
    let motive_var = "p".to_string();
    let hp = abstract_family(&f.family, &root, &motive_var)?;
    let start_index = root_index(f, &decl.self_type())?;
    let args: Vec<HOArg> = decl
        .constructors
        .iter()
        .map(|c| HOArg {
            name: c.name.to_lowercase(),
            ctor: c.name.clone(),
            arg_types: c.arg_types.iter().map(|t| rename_type_con(t, &root, &motive_var)).collect(),
            result: rename_type_con(&decl.self_type(), &root, &motive_var),
        })
        .collect();
    let root_ctors: Vec<(String, String)> = args.iter().map(|a| (a.ctor.clone(), a.name.clone())).collect();
    let recipe = f.cases.iter().map(|c| (c.name.clone(), recipe_of(&c.pattern, &root_ctors))).collect();
    let name = match f.name.strip_prefix("fold") {
        Some(rest) => format!("hfold{rest}"),
        None => format!("h{}", f.name),
    };
    Ok(HOFoldSpec {
        name,
        base: f.clone(),
        hp,
        motive_var,
        root_params: decl.params.clone(),
        root,
        args,
        start_index,
        recipe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derive::derive_fold_spec;
    use crate::syntax::load_program;

    fn d() -> Program {
        load_program(include_str!("../../../../programs/d.ndt")).unwrap()
    }

    #[test]
    fn hfoldd_arguments() {
        let p = d();
        let h = derive_hofold(&p, &derive_fold_spec(&p, "D").unwrap()).unwrap();
        assert_eq!(h.name, "hfoldD");
        assert_eq!(h.args.iter().map(|a| a.name.as_str()).collect::<Vec<_>>(), vec!["dnil", "dcons", "acons"]);
        let dcons: Vec<String> = h.arg("dcons").unwrap().arg_types.iter().map(|t| t.to_string()).collect();
        assert_eq!(dcons, vec!["a", "b", "p (I a) b", "p (p (I b) (I b)) (I a)"]);
        let acons: Vec<String> = h.arg("acons").unwrap().arg_types.iter().map(|t| t.to_string()).collect();
        assert_eq!(acons, vec!["I b", "p (I (I (p b a))) (p (p b a) (p a b))"]);
        assert_eq!(h.start_index.to_string(), "IsD VarA VarB");
        assert_eq!(h.recipe_for("varA"), Some(&Template::Slot("l".into())));
        assert_eq!(h.recipe_for("zero").unwrap().render(false), "Zero");
        assert_eq!(h.recipe_for("dcons").unwrap().render(false), "dcons x y l v");
    }

    #[test]
    fn hp_agrees_with_h_off_root() {
        let p = d();
        let f = derive_fold_spec(&p, "D").unwrap();
        let h = derive_hofold(&p, &f).unwrap();
        for i in f.family.index_type().enumerate(3) {
            let hp = h.hp.subject_type(&i).unwrap();
            let base = f.family.subject_type(&i).unwrap();
            if !i.contains_con("IsD") {
                assert_eq!(hp, base, "{i}");
            } else {
                assert_ne!(hp, base, "{i}");
            }
        }
    }
}
