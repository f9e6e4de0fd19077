use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::derive::{derive_fold_spec, indexed_rep_of, Family, IndexExpr, InterpretationFn, TypeTemplate};
use crate::syntax::{load_program, Program};

fn bush() -> Program {
    load_program(include_str!("../../../../programs/bush.ndt")).unwrap()
}

fn d() -> Program {
    load_program(include_str!("../../../../programs/d.ndt")).unwrap()
}

fn term() -> Program {
    load_program(include_str!("../../../../programs/term.ndt")).unwrap()
}

fn nbush() -> Family {
    Family::interpreted(InterpretationFn::ntimes("NBush", "a", TypeTemplate::app("Bush", vec![TypeTemplate::Hole(0)])))
}

fn nincr() -> Family {
    Family::interpreted(InterpretationFn::ntimes("NIncr", "a", TypeTemplate::app("Incr", vec![TypeTemplate::Hole(0)])))
}

fn v(s: &str) -> Value {
    s.parse().unwrap()
}

fn nat(n: usize) -> IndexExpr {
    IndexExpr::nat(n)
}

fn bush1() -> Value {
    v("ConsB[4, ConsB[ConsB[8, ConsB[ConsB[5, NilB], ConsB[ConsB[ConsB[3, NilB], NilB], NilB]]], \
       ConsB[ConsB[ConsB[7, NilB], ConsB[NilB, ConsB[ConsB[ConsB[ConsB[7, NilB], NilB], NilB], NilB]]], \
       ConsB[ConsB[ConsB[NilB, ConsB[ConsB[ConsB[0, NilB], NilB], NilB]], NilB], NilB]]]]")
}

#[test]
fn check_value_examples() {
    let nats = Carriers::new().with("a", CarrierSet::AllNats);
    assert!(check_value(&bush(), &nbush(), &nat(1), &nats, &bush1()).is_ok());
    assert!(matches!(
        check_value(&bush(), &nbush(), &nat(0), &nats, &v("NilB")),
        Err(TypeError::ExpectedGround { .. })
    ));
    let chars = Carriers::new().with("a", CarrierSet::AllChars);
    assert!(check_value(&term(), &nincr(), &nat(5), &chars, &v("Succ[Succ[Zero]]")).is_ok());
    assert!(check_value(&term(), &nincr(), &nat(1), &chars, &v("Succ[Succ[Zero]]")).is_err());
    assert!(matches!(
        check_value(&bush(), &nbush(), &IndexExpr::var("n"), &nats, &v("NilB")),
        Err(TypeError::Derive(_))
    ));
    let small = Carriers::new().with("a", CarrierSet::nats(3));
    assert!(matches!(
        check_value(&bush(), &nbush(), &nat(1), &small, &v("ConsB[4, NilB]")),
        Err(TypeError::OutsideCarrier { .. })
    ));
}

#[test]
fn enumeration_examples() {
    let one = Carriers::new().with("a", CarrierSet::nats(1));
    assert_eq!(enumerate_values(&bush(), &nbush(), &nat(1), &one, 1).unwrap(), vec![v("NilB")]);
    let w = Carriers::new().with("a", CarrierSet::chars(&['W']));
    assert_eq!(enumerate_values(&term(), &nincr(), &nat(1), &w, 2).unwrap(), vec![v("Zero"), v("Succ['W']")]);
}

/// Every tree over the given alphabet with at most `bound` nodes.
fn all_trees(ctors: &[(&str, usize)], grounds: &[Value], bound: usize) -> Vec<Value> {
    fn exact(ctors: &[(&str, usize)], grounds: &[Value], n: usize) -> Vec<Value> {
        let mut out = Vec::new();
        if n == 1 {
            out.extend(grounds.iter().cloned());
        }
        for (c, k) in ctors {
            for kids in seqs(ctors, grounds, *k, n.saturating_sub(1)) {
                if n >= 1 {
                    out.push(Value::con(c, kids));
                }
            }
        }
        out
    }
    fn seqs(ctors: &[(&str, usize)], grounds: &[Value], k: usize, n: usize) -> Vec<Vec<Value>> {
        if k == 0 {
            return if n == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for s in 1..=n {
            for h in exact(ctors, grounds, s) {
                for mut t in seqs(ctors, grounds, k - 1, n - s) {
                    t.insert(0, h.clone());
                    out.push(t);
                }
            }
        }
        out
    }
    (1..=bound).flat_map(|n| exact(ctors, grounds, n)).collect()
}

#[test]
fn enumeration_count_matches_brute_force() {
    let two = Carriers::new().with("a", CarrierSet::nats(2));
    let trees = all_trees(&[("NilB", 0), ("ConsB", 2)], &[Value::nat(0), Value::nat(1)], 5);
    let ty = expand_type(&nbush(), &nat(1)).unwrap();
    let expected = trees.iter().filter(|t| check_against_type(&bush(), &ty, &two, t).is_ok()).count();
    let got = enumerate_values(&bush(), &nbush(), &nat(1), &two, 5).unwrap();
    assert_eq!(got.len(), expected);
    for n in 0..4 {
        let ty = expand_type(&nbush(), &nat(n)).unwrap();
        let expected: Vec<Value> =
            trees.iter().filter(|t| check_against_type(&bush(), &ty, &two, t).is_ok()).cloned().collect();
        let mut got = enumerate_values(&bush(), &nbush(), &nat(n), &two, 5).unwrap();
        let sorted_by_size = got.windows(2).all(|w| value_size(&w[0]) <= value_size(&w[1]));
        assert!(sorted_by_size);
        got.sort();
        let mut expected = expected;
        expected.sort();
        assert_eq!(got, expected, "index {n}");
    }
}

#[test]
fn enumeration_is_size_then_lexicographic_without_duplicates() {
    let p = d();
    let f = derive_fold_spec(&p, "D").unwrap();
    let c = Carriers::new().with("a", CarrierSet::nats(2)).with("b", CarrierSet::nats(2));
    let vals = enumerate_values(
        &p,
        &f.family,
        &IndexExpr::con("IsD", vec![IndexExpr::leaf("VarA"), IndexExpr::leaf("VarB")]),
        &c,
        6,
    )
    .unwrap();
    assert!(!vals.is_empty());
    for w in vals.windows(2) {
        assert!((value_size(&w[0]), &w[0]) < (value_size(&w[1]), &w[1]));
    }
}

#[test]
fn lazy_check_agrees_with_expanded_check() {
    let p = d();
    let f = derive_fold_spec(&p, "D").unwrap();
    let c = Carriers::new().with("a", CarrierSet::nats(2)).with("b", CarrierSet::nats(1));
    let trees = all_trees(
        &[("DNil", 0), ("DCons", 4), ("ACons", 2), ("Zero", 0), ("Succ", 2)],
        &[Value::nat(0), Value::nat(1)],
        6,
    );
    for i in f.family.index_type().enumerate(2) {
        let ty = expand_type(&f.family, &i).unwrap();
        for t in &trees {
            assert_eq!(
                check_value(&p, &f.family, &i, &c, t).is_ok(),
                check_against_type(&p, &ty, &c, t).is_ok(),
                "{t} at {i}"
            );
        }
    }
}

#[test]
fn indexed_family_checks_and_enumerates() {
    let p = bush();
    let f = derive_fold_spec(&p, "Bush").unwrap();
    let rep = indexed_rep_of(&f).unwrap();
    let c = Carriers::new().with("a", CarrierSet::nats(2));
    let i1 = IndexExpr::con("IsBush", vec![IndexExpr::leaf("VarA")]);
    assert!(check_value(&p, &rep.fold.family, &i1, &c, &v("ConsBN[BaseA[1], NilBN]")).is_err());
    assert!(check_value(&p, &rep.fold.family, &i1, &c, &v("ConsBN[Base[1], NilBN]")).is_ok());
    assert!(check_value(&p, &rep.fold.family, &i1, &c, &v("ConsBN[NilBN, NilBN]")).is_err());
    let vals = enumerate_values(&p, &rep.fold.family, &i1, &c, 5).unwrap();
    let nested = enumerate_values(&p, &f.family, &i1, &c, 5).unwrap();
    // Base adds one node per carrier leaf, so compare counts up to the largest shared size
    assert!(vals.len() <= nested.len());
    for w in &vals {
        assert!(check_value(&p, &rep.fold.family, &i1, &c, w).is_ok());
    }
}

fn ib(i: IndexExpr) -> IndexExpr {
    IndexExpr::con("IsBush", vec![i])
}

#[test]
fn identity_algebra_and_trace() {
    let p = bush();
    let f = derive_fold_spec(&p, "Bush").unwrap();
    let id = Algebra::identity(&f);
    let nats = Carriers::new().with("a", CarrierSet::AllNats);
    let i1 = ib(IndexExpr::leaf("VarA"));
    assert!(check_value(&p, &f.family, &i1, &nats, &bush1()).is_ok());
    let (out, trace) = record(|| eval_fold(&f, &id, &i1, &bush1()));
    assert_eq!(out.unwrap(), bush1());
    assert!(!trace.is_empty());
    assert!(descent_audit(&trace).ok());
}

#[test]
fn sum_over_derived_bush_fold() {
    let p = bush();
    let f = derive_fold_spec(&p, "Bush").unwrap();
    let sum = Algebra::new().native("varA", "id", |a| Ok(a.value(0).clone())).constant("nilb", Value::nat(0)).native(
        "consb",
        "add",
        |a| Ok(Value::nat(a.nat_arg(0)? + a.nat_arg(1)?)),
    );
    let i1 = ib(IndexExpr::leaf("VarA"));
    assert_eq!(eval_fold(&f, &sum, &i1, &bush1()).unwrap(), Value::nat(34));
    assert_eq!(eval_fold(&f, &sum, &i1, &v("NilB")).unwrap(), Value::nat(0));
    assert_eq!(eval_fold(&f, &sum, &i1, &v("ConsB[5, NilB]")).unwrap(), Value::nat(5));
}

#[test]
fn algebra_must_cover_the_spec() {
    let p = bush();
    let f = derive_fold_spec(&p, "Bush").unwrap();
    let partial = Algebra::new().constant("nilb", Value::nat(0));
    assert!(matches!(
        eval_fold(&f, &partial, &ib(IndexExpr::leaf("VarA")), &v("NilB")),
        Err(EvalError::MissingCase(_))
    ));
    let extra = Algebra::identity(&f).constant("nope", Value::nat(0));
    assert!(matches!(eval_fold(&f, &extra, &ib(IndexExpr::leaf("VarA")), &v("NilB")), Err(EvalError::ExtraCase(_))));
}

fn succ_fn(k: u64) -> LeafFn {
    Arc::new(move |x: &Value| Ok(Value::nat(x.as_nat().unwrap() + k)))
}

#[test]
fn map_examples() {
    let p = bush();
    let f = derive_fold_spec(&p, "Bush").unwrap();
    let fns = BTreeMap::from([("a".to_string(), succ_fn(1))]);
    let i1 = ib(IndexExpr::leaf("VarA"));
    assert_eq!(eval_map(&p, &f, &fns, &i1, &v("ConsB[5, NilB]")).unwrap(), v("ConsB[6, NilB]"));

    let p = d();
    let f = derive_fold_spec(&p, "D").unwrap();
    let fns = BTreeMap::from([("a".to_string(), succ_fn(1)), ("b".to_string(), succ_fn(2))]);
    let dab = IndexExpr::con("IsD", vec![IndexExpr::leaf("VarA"), IndexExpr::leaf("VarB")]);
    assert_eq!(eval_map(&p, &f, &fns, &dab, &v("DCons[1, 2, DNil, DNil]")).unwrap(), v("DCons[2, 4, DNil, DNil]"));
    let ia = IndexExpr::con("IsI", vec![IndexExpr::leaf("VarA")]);
    assert_eq!(eval_map(&p, &f, &fns, &ia, &v("Succ[3, Zero]")).unwrap(), v("Succ[4, Zero]"));
}

#[test]
fn sum_d_by_hand() {
    let p = d();
    let f = derive_fold_spec(&p, "D").unwrap();
    let add_all = |a: &CaseArgs<'_, Value>| Ok(Value::nat(a.values().iter().map(|x| x.as_nat().unwrap()).sum()));
    let sum = Algebra::new()
        .native("varA", "id", |a| Ok(a.value(0).clone()))
        .native("varB", "id", |a| Ok(a.value(0).clone()))
        .constant("dnil", Value::nat(0))
        .native("dcons", "add4", add_all)
        .native("acons", "add", add_all)
        .constant("zero", Value::nat(0))
        .native("succ", "add", add_all);
    let dab = IndexExpr::con("IsD", vec![IndexExpr::leaf("VarA"), IndexExpr::leaf("VarB")]);
    assert_eq!(eval_fold(&f, &sum, &dab, &v("DCons[1, 2, DNil, DNil]")).unwrap(), Value::nat(3));
    assert_eq!(eval_fold(&f, &sum, &dab, &v("ACons[Zero, DNil]")).unwrap(), Value::nat(0));
}

#[test]
fn sem_domain_applies_functions() {
    let twice = Sem::func(|x| Ok(Sem::Val(Value::nat(x.value()?.as_nat().unwrap() * 2))));
    assert_eq!(twice.apply(Sem::Val(Value::nat(4))).unwrap().value().unwrap(), Value::nat(8));
    assert!(Sem::Val(Value::nat(1)).apply(Sem::Val(Value::nat(1))).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_trees_lazy_vs_expanded(seed in 0usize..2000) {
        let p = bush();
        let c = Carriers::new().with("a", CarrierSet::nats(2));
        let trees = all_trees(&[("NilB", 0), ("ConsB", 2)], &[Value::nat(0), Value::nat(1), Value::nat(2)], 5);
        let t = &trees[seed % trees.len()];
        for n in 0..4 {
            let ty = expand_type(&nbush(), &nat(n)).unwrap();
            prop_assert_eq!(
                check_value(&p, &nbush(), &nat(n), &c, t).is_ok(),
                check_against_type(&p, &ty, &c, t).is_ok()
            );
        }
    }
}
