//! Functions over the corpus families, each a fold with a given algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{folds, program};
use crate::derive::{IndexExpr, Template};
use crate::interp::{
    eval_fold, eval_map, eval_templates_sem, Algebra, CallFn, EvalError, Ground, LeafFn, Sem, SemFn, Value,
};

pub type Res = Result<Value, EvalError>;

fn idx(n: usize) -> IndexExpr {
    IndexExpr::nat(n)
}

fn slot(x: &str) -> Template {
    Template::Slot(x.into())
}

fn ctor(c: &str, args: Vec<Template>) -> Template {
    Template::Ctor(c.into(), args)
}

pub fn nat_of(v: &Value) -> Result<u64, EvalError> {
    v.as_nat().ok_or_else(|| EvalError::native("nat", format!("`{v}` is not a natural")))
}

pub fn text_of(v: &Value) -> Result<&str, EvalError> {
    v.as_text().ok_or_else(|| EvalError::native("text", format!("`{v}` is not a string")))
}

pub fn leaf_fn(f: impl Fn(&Value) -> Res + Send + Sync + 'static) -> LeafFn {
    Arc::new(f)
}

pub fn call_fn(f: impl Fn(&[Value]) -> Res + Send + Sync + 'static) -> CallFn {
    Arc::new(f)
}

fn on_a(f: LeafFn) -> BTreeMap<String, LeafFn> {
    BTreeMap::from([("a".to_string(), f)])
}

/// The `Incr` successor as a leaf function.
pub fn succ_fn() -> LeafFn {
    leaf_fn(|v| Ok(Value::con("Succ", vec![v.clone()])))
}

// Bushes

pub fn sum_bush(v: &Value) -> Res {
    let alg = Algebra::new()
        .replace("base", slot("x"))
        .constant("nil", Value::nat(0))
        .native("cons", "add", |a| Ok(Value::nat(a.nat_arg(0)? + a.nat_arg(1)?)));
    eval_fold(&folds().b, &alg, &idx(1), v)
}

pub fn length_bush(v: &Value) -> Res {
    let alg =
        Algebra::new()
            .constant("base", Value::nat(0))
            .constant("nil", Value::nat(0))
            .native("cons", "succ", |a| Ok(Value::nat(a.nat_arg(1)? + 1)));
    eval_fold(&folds().b, &alg, &idx(1), v)
}

/// `mapB n f`: `f` on every element of a value of `NBush n a`.
pub fn map_bush(n: usize, f: LeafFn, v: &Value) -> Res {
    eval_map(program("bush"), &folds().b, &on_a(f), &idx(n), v)
}

/// The higher-order fold of `Bush`, as the general fold at `S Z`.
pub fn hfold_bush(nil: CallFn, cons: CallFn, v: &Value) -> Res {
    let h = &folds().hb;
    let mut alg = Algebra::from_templates(&h.recipe);
    alg.functions.insert("nilb".into(), nil);
    alg.functions.insert("consb".into(), cons);
    eval_fold(&h.base, &alg, &h.start_index, v)
}

/// `lift n g`: `g` applied at depth `n` of the nesting.
pub fn lift_bush(n: usize, g: LeafFn, v: &Value) -> Res {
    if n == 0 {
        return Ok(v.clone());
    }
    let inner = {
        let g = g.clone();
        leaf_fn(move |x| lift_bush(n - 1, g.clone(), x))
    };
    g(&map_bush(1, inner, v)?)
}

fn sem_nat(s: Sem) -> Result<u64, EvalError> {
    nat_of(&s.value()?)
}

/// `sumAux`: the higher-order fold into continuations `(a → Nat) → Nat`.
pub fn sum_aux(v: &Value) -> Result<Sem, EvalError> {
    let h = &folds().hb;
    let base: SemFn = Arc::new(|_| Ok(Sem::func(|_k| Ok(Sem::Val(Value::nat(0))))));
    let step: SemFn = Arc::new(|args: Vec<Sem>| {
        let (x, k) = (args[0].clone(), args[1].clone());
        Ok(Sem::func(move |f: Sem| {
            let fx = sem_nat(f.apply(x.clone())?)?;
            let g = f.clone();
            let rest = sem_nat(k.apply(Sem::func(move |r: Sem| r.apply(g.clone())))?)?;
            Ok(Sem::Val(Value::nat(fx + rest)))
        }))
    });
    let fns = BTreeMap::from([("nilb".to_string(), base), ("consb".to_string(), step)]);
    eval_templates_sem(&h.base, &h.recipe, &fns, &h.start_index, v)
}

/// `sumB' l = sumAux l id`.
pub fn sum_bush_cps(v: &Value) -> Res {
    sum_aux(v)?.apply(Sem::func(Ok))?.value()
}

// Incr

/// `mapIncr n f`.
pub fn map_incr(n: usize, f: LeafFn, v: &Value) -> Res {
    let alg = Algebra::new()
        .native("base", "f", move |a| f(a.value(0)))
        .replace("zero", ctor("Zero", vec![]))
        .replace("succ", ctor("Succ", vec![slot("x")]));
    eval_fold(&folds().i, &alg, &idx(n), v)
}

/// `foldI'`: the regular fold of `Incr`, as `foldI` at `S Z`.
pub fn fold_incr_regular(zero: Value, succ: LeafFn, v: &Value) -> Res {
    let alg = Algebra::new()
        .native("base", "succ", move |a| succ(a.value(0)))
        .constant("zero", zero)
        .replace("succ", slot("x"));
    eval_fold(&folds().i, &alg, &idx(1), v)
}

/// `showI m`: `Su` per `Succ`, `Ze` for `Zero`, strings at the bottom.
pub fn show_incr(m: usize, v: &Value) -> Res {
    let alg = Algebra::new()
        .replace("base", slot("x"))
        .constant("zero", Value::text("0"))
        .native("succ", "su", |a| Ok(Value::text(&format!("S{}", text_of(a.value(0))?))));
    eval_fold(&folds().i, &alg, &idx(m), v)
}

// Terms

/// `mapT n f`: `f` on the free variables of a term at depth `n`.
pub fn map_term(n: usize, f: LeafFn, v: &Value) -> Res {
    let alg = Algebra::identity(&folds().t).native("var", "mapIncr", move |a| {
        Ok(Value::con("Var", vec![map_incr(a.nat("n")? as usize, f.clone(), a.value(0))?]))
    });
    eval_fold(&folds().t, &alg, &idx(n), v)
}

/// `showT` on `Term String`, applications fully parenthesized.
pub fn show_term(v: &Value) -> Res {
    let alg = Algebra::new()
        .native("var", "showI", |a| show_incr(a.nat("n")? as usize, a.value(0)))
        .native("app", "app", |a| Ok(Value::text(&format!("({} {})", text_of(a.value(0))?, text_of(a.value(1))?))))
        .native("lam", "lam", |a| Ok(Value::text(&format!("\\{}", text_of(a.value(0))?))));
    eval_fold(&folds().t, &alg, &idx(0), v)
}

/// `showTC`: characters shown as one-letter strings first.
pub fn show_term_chars(v: &Value) -> Res {
    let to_text = leaf_fn(|c| match c {
        Value::Ground(Ground::Char(c)) => Ok(Value::text(&c.to_string())),
        _ => Err(EvalError::native("showTC", format!("`{c}` is not a character"))),
    });
    show_term(&map_term(0, to_text, v)?)
}

/// `match x`: `x` becomes the new bound variable, everything else shifts.
pub fn match_var(x: &Value, a: &Value) -> Value {
    if x == a {
        Value::leaf("Zero")
    } else {
        Value::con("Succ", vec![a.clone()])
    }
}

/// `abst x t`: binds the free variable `x`.
pub fn abst(x: &Value, t: &Value) -> Res {
    let x = x.clone();
    Ok(Value::con("Lam", vec![map_term(0, leaf_fn(move |a| Ok(match_var(&x, a))), t)?]))
}

/// `varcase n s`: the variable case of substitution at depth `n`.
pub fn varcase(n: usize, s: &Value, v: &Value) -> Res {
    let s = s.clone();
    let alg = Algebra::new()
        .native("base", "h", move |a| match a.value(0) {
            Value::Con(c, _) if c == "Zero" => Ok(s.clone()),
            Value::Con(c, kids) if c == "Succ" => Ok(Value::con("Var", vec![kids[0].clone()])),
            other => Err(EvalError::native("h", format!("`{other}` is not an Incr value"))),
        })
        .constant("zero", Value::con("Var", vec![Value::leaf("Zero")]))
        .native("succ", "shift", |a| map_term(0, succ_fn(), a.value(0)));
    eval_fold(&folds().i, &alg, &idx(n), v)
}

/// `subst n s t`: replaces variable `n` of `t` by `s`.
pub fn subst(n: usize, s: &Value, t: &Value) -> Res {
    let s = s.clone();
    let alg =
        Algebra::identity(&folds().t).native("var", "varcase", move |a| varcase(a.nat("n")? as usize, &s, a.value(0)));
    eval_fold(&folds().t, &alg, &idx(n), t)
}

/// One beta step at the root, if there is a redex there.
pub fn redex(t: &Value) -> Res {
    match t {
        Value::Con(app, kids) if app == "App" => match &kids[0] {
            Value::Con(lam, body) if lam == "Lam" => subst(0, &kids[1], &body[0]),
            _ => Ok(t.clone()),
        },
        _ => Ok(t.clone()),
    }
}

/// `hfoldT`: the higher-order fold of `Term`.
pub fn hfold_term(var: CallFn, app: CallFn, lam: CallFn, v: &Value) -> Res {
    let h = &folds().ht;
    let mut alg = Algebra::from_templates(&h.recipe);
    alg.functions.extend([("var".to_string(), var), ("app".to_string(), app), ("lam".to_string(), lam)]);
    eval_fold(&h.base, &alg, &h.start_index, v)
}

// Terms with explicit substitution

fn var_e(x: Value) -> Value {
    Value::con("VarE", vec![x])
}

/// `mapE n f`.
pub fn map_terme(n: usize, f: LeafFn, v: &Value) -> Res {
    let alg = Algebra::identity(&folds().e).native("varBase", "f", move |a| Ok(var_e(f(a.value(0))?)));
    eval_fold(&folds().e, &alg, &idx(n), v)
}

/// `hfoldE`: the higher-order fold of `TermE`.
pub fn hfold_terme(var: CallFn, app: CallFn, lam: CallFn, v: &Value) -> Res {
    let h = &folds().he;
    let mut alg = Algebra::from_templates(&h.recipe);
    alg.functions.extend([("vare".to_string(), var), ("appe".to_string(), app), ("lame".to_string(), lam)]);
    eval_fold(&h.base, &alg, &h.start_index, v)
}

/// `matchE x`: like `match`, but the shifted variable is itself a term.
pub fn match_var_e(x: &Value, a: &Value) -> Value {
    if x == a {
        Value::leaf("Zero")
    } else {
        Value::con("Succ", vec![var_e(a.clone())])
    }
}

pub fn abst_terme(x: &Value, t: &Value) -> Res {
    let x = x.clone();
    Ok(Value::con("LamE", vec![map_terme(0, leaf_fn(move |a| Ok(match_var_e(&x, a))), t)?]))
}

/// `substE n s t`: no shifting needed, `Succ` already carries a term.
pub fn subst_terme(n: usize, s: &Value, t: &Value) -> Res {
    let s = s.clone();
    let alg = Algebra::identity(&folds().e).native("varBase", "base", move |a| match a.value(0) {
        Value::Con(c, _) if c == "Zero" => Ok(s.clone()),
        Value::Con(c, kids) if c == "Succ" => Ok(kids[0].clone()),
        other => Err(EvalError::native("base", format!("`{other}` is not an Incr value"))),
    });
    eval_fold(&folds().e, &alg, &idx(n), t)
}

pub fn redex_terme(t: &Value) -> Res {
    match t {
        Value::Con(app, kids) if app == "AppE" => match &kids[0] {
            Value::Con(lam, body) if lam == "LamE" => subst_terme(0, &kids[1], &body[0]),
            _ => Ok(t.clone()),
        },
        _ => Ok(t.clone()),
    }
}

/// `cvtE n`: performs the pending substitutions, yielding a plain term.
pub fn cvt_terme(n: usize, v: &Value) -> Res {
    let alg = Algebra::new()
        .replace("varBase", ctor("Var", vec![slot("x")]))
        .constant("varZero", Value::con("Var", vec![Value::leaf("Zero")]))
        .native("varSucc", "shift", |a| map_term(0, succ_fn(), a.value(0)))
        .replace("app", ctor("App", vec![slot("x"), slot("x'")]))
        .replace("lam", ctor("Lam", vec![slot("x")]));
    eval_fold(&folds().e, &alg, &idx(n), v)
}

// D

pub fn d_index() -> IndexExpr {
    IndexExpr::con("IsD", vec![IndexExpr::leaf("VarA"), IndexExpr::leaf("VarB")])
}

pub fn i_index() -> IndexExpr {
    IndexExpr::con("IsI", vec![IndexExpr::leaf("VarA")])
}

/// `mapD`: `f` on the `a` leaves, `g` on the `b` leaves.
pub fn map_d(index: &IndexExpr, f: LeafFn, g: LeafFn, v: &Value) -> Res {
    let fns = BTreeMap::from([("a".to_string(), f), ("b".to_string(), g)]);
    eval_map(program("d"), &folds().d, &fns, index, v)
}

fn sum_all(a: &crate::interp::CaseArgs<'_, Value>) -> Res {
    (0..a.args.len()).try_fold(0, |acc, k| Ok(acc + a.nat_arg(k)?)).map(Value::nat)
}

fn d_sum_algebra(cons_counts: bool) -> Algebra {
    let alg = Algebra::new()
        .replace("varA", slot("l"))
        .replace("varB", slot("l"))
        .constant("bnil", Value::nat(0))
        .native("acons", "add", sum_all)
        .constant("zero", Value::nat(0))
        .native("succ", "add", sum_all);
    if cons_counts {
        alg.native("bcons", "add", sum_all)
    } else {
        alg.constant("bcons", Value::nat(0)).constant("acons", Value::nat(0))
    }
}

/// Sum of every natural in a `D Nat Nat`.
pub fn sum_d(v: &Value) -> Res {
    eval_fold(&folds().d, &d_sum_algebra(true), &d_index(), v)
}

/// Sum of an `I Nat`, through the `D` fold at `IsI VarA`.
pub fn sum_i(v: &Value) -> Res {
    eval_fold(&folds().d, &d_sum_algebra(false), &i_index(), v)
}

// Indexed representation

/// Converts `NBush n a` to `BushN n a`.
pub fn to_bush_n(n: usize, v: &Value) -> Res {
    let rep = &folds().bush_n;
    eval_fold(&folds().b, &Algebra::from_templates(&rep.conversions.to), &idx(n), v)
}

/// Converts `BushN n a` back to `NBush n a`.
pub fn from_bush_n(n: usize, v: &Value) -> Res {
    let rep = &folds().bush_n;
    eval_fold(&rep.fold, &Algebra::from_templates(&rep.conversions.from), &idx(n), v)
}
