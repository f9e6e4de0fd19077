//! Hand-written folds over the corpus families.

use std::collections::BTreeMap;

use crate::derive::{
    derive_fold_spec, ArgKind, ArgSpec, Family, FoldCase, FoldKind, FoldSpec, IndexExpr, InterpretationFn, RawType,
    SignatureStyle, TypeTemplate, ValuePattern,
};

use super::program;

fn n() -> IndexExpr {
    IndexExpr::var("n")
}

fn z() -> IndexExpr {
    IndexExpr::leaf("Z")
}

fn s(i: IndexExpr) -> IndexExpr {
    IndexExpr::con("S", vec![i])
}

fn rec(b: &str, i: IndexExpr) -> ArgSpec {
    ArgSpec { binder: b.into(), kind: ArgKind::Recursive(i) }
}

fn raw(b: &str, t: RawType) -> ArgSpec {
    ArgSpec { binder: b.into(), kind: ArgKind::Raw(t) }
}

fn param(b: &str) -> ArgSpec {
    raw(b, RawType::Param("a".into()))
}

fn case(name: &str, index: IndexExpr, pattern: ValuePattern, args: Vec<ArgSpec>) -> FoldCase {
    FoldCase { name: name.into(), index, pattern, args }
}

fn con(c: &str, xs: &[&str]) -> ValuePattern {
    ValuePattern::con(c, xs.iter().map(|x| ValuePattern::bind(x)).collect())
}

fn layer(t: &str) -> TypeTemplate {
    TypeTemplate::app(t, vec![TypeTemplate::Hole(0)])
}

/// `NBush n a`: `n` layers of `Bush` around `a`.
pub fn nbush() -> InterpretationFn {
    InterpretationFn::ntimes("NBush", "a", layer("Bush"))
}

/// `NIncr n a`: `n` layers of `Incr` around `a`.
pub fn nincr() -> InterpretationFn {
    InterpretationFn::ntimes("NIncr", "a", layer("Incr"))
}

/// `IncrTermE n a`: each layer is `Incr (TermE _)`.
pub fn incr_terme() -> InterpretationFn {
    InterpretationFn::ntimes("IncrTermE", "a", TypeTemplate::app("Incr", vec![layer("TermE")]))
}

/// `Term (NIncr n a)`.
pub fn term_family() -> Family {
    Family::Interpreted { interp: nincr(), wrap: Some(layer("Term")) }
}

/// `TermE (IncrTermE n a)`.
pub fn terme_family() -> Family {
    Family::Interpreted { interp: incr_terme(), wrap: Some(layer("TermE")) }
}

fn spec(name: &str, family: Family, cases: Vec<FoldCase>, index_first: bool, root: &str) -> FoldSpec {
    FoldSpec {
        name: name.into(),
        family,
        index_var: "n".into(),
        subject_name: "xs".into(),
        cases,
        style: SignatureStyle::Positional,
        index_first,
        kind: FoldKind::Customized,
        root: Some(root.into()),
    }
}

pub fn fold_b() -> FoldSpec {
    spec(
        "foldB",
        Family::interpreted(nbush()),
        vec![
            case("base", z(), ValuePattern::bind("x"), vec![param("x")]),
            case("nil", s(n()), con("NilB", &[]), vec![]),
            case("cons", s(n()), con("ConsB", &["x", "xs"]), vec![rec("x", n()), rec("xs", s(s(n())))]),
        ],
        false,
        "Bush",
    )
}

pub fn fold_i() -> FoldSpec {
    spec(
        "foldI",
        Family::interpreted(nincr()),
        vec![
            case("base", z(), ValuePattern::bind("x"), vec![param("x")]),
            case("zero", s(n()), con("Zero", &[]), vec![]),
            case("succ", s(n()), con("Succ", &["x"]), vec![rec("x", n())]),
        ],
        true,
        "Incr",
    )
}

pub fn fold_t() -> FoldSpec {
    spec(
        "foldT",
        term_family(),
        vec![
            case("var", n(), con("Var", &["x"]), vec![raw("x", RawType::Interp(n()))]),
            case("app", n(), con("App", &["x1", "x2"]), vec![rec("x1", n()), rec("x2", n())]),
            case("lam", n(), con("Lam", &["x"]), vec![rec("x", s(n()))]),
        ],
        true,
        "Term",
    )
}

pub fn fold_e() -> FoldSpec {
    let var = |x: ValuePattern| ValuePattern::con("VarE", vec![x]);
    spec(
        "foldE",
        terme_family(),
        vec![
            case("varBase", z(), var(ValuePattern::bind("x")), vec![param("x")]),
            case("varZero", s(n()), var(con("Zero", &[])), vec![]),
            case("varSucc", s(n()), var(con("Succ", &["x"])), vec![rec("x", n())]),
            case("app", n(), con("AppE", &["x", "x'"]), vec![rec("x", n()), rec("x'", n())]),
            case("lam", n(), con("LamE", &["x"]), vec![rec("x", s(n()))]),
        ],
        true,
        "TermE",
    )
}

/// The derived fold for `D`, with the nil and cons cases named as in the
/// hand-written presentation.
pub fn fold_d() -> FoldSpec {
    let names: BTreeMap<String, String> =
        [("dnil", "bnil"), ("dcons", "bcons")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    derive_fold_spec(program("d"), "D").expect("D is proper").with_case_names(&names)
}

/// The derived fold for `Bush`, next to the hand-written `foldB`.
pub fn fold_bush_derived() -> FoldSpec {
    derive_fold_spec(program("bush"), "Bush").expect("Bush is proper")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_validate() {
        for f in [fold_b(), fold_i(), fold_t(), fold_e(), fold_d()] {
            f.validate().unwrap_or_else(|e| panic!("{}: {e}", f.name));
        }
    }

    #[test]
    fn foldd_case_names() {
        assert_eq!(fold_d().case_names(), ["varA", "varB", "bnil", "bcons", "acons", "zero", "succ"]);
    }

    #[test]
    fn terme_subject_types() {
        let f = terme_family();
        assert_eq!(f.subject_type(&IndexExpr::nat(0)).unwrap().to_string(), "TermE a");
        assert_eq!(f.subject_type(&IndexExpr::nat(1)).unwrap().to_string(), "TermE (Incr (TermE a))");
    }
}
