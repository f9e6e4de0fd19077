//! The registered laws, each an equality between two evaluations.

use super::{domain, Bounds, Ctx, Flow};
use crate::corpus::{self, folds, program, reference, *};
use crate::derive::{Family, IndexExpr};
use crate::interp::{CallFn, CarrierSet, Carriers, EvalError, Ground, LeafFn, Value};

pub struct Property {
    pub name: &'static str,
    pub statement: &'static str,
    pub(super) body: fn(&Bounds, &mut Ctx) -> Flow,
}

impl std::fmt::Debug for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Property").field("name", &self.name).finish()
    }
}

const fn p(name: &'static str, statement: &'static str, body: fn(&Bounds, &mut Ctx) -> Flow) -> Property {
    Property { name, statement, body }
}

static PROPERTIES: &[Property] = &[
    p("map_identity", "map n id v == v (Bush, Incr, Term, TermE, D/I)", map_identity),
    p("map_compose", "map n (f . g) v == map n f (map n g v)", map_compose),
    p("map_nil", "mapB (S n) f NilB == NilB", map_nil),
    p("map_cons", "mapB 1 f (ConsB x xs) == ConsB (f x) (mapB 1 (mapB 1 f) xs)", map_cons),
    p("add_map", "mapB (m + n) f v == mapB m (mapB n f) v", add_map),
    p("hfold_nil", "hfoldB base step NilB == base", hfold_nil),
    p(
        "hfold_cons",
        "hfoldB base step (ConsB x xs) == step x (hfoldB base step (mapB 1 (hfoldB base step) xs))",
        hfold_cons,
    ),
    p(
        "uniqueness_spotcheck",
        "lift n (hfoldB base step) v == lift n (general-recursive hfoldB base step) v",
        uniqueness_spotcheck,
    ),
    p("roundtrip_indexed", "from (to v) == v and to (from w) == w", roundtrip_indexed),
    p("beta_law_term", "redex (App (abst x t) (Var x)) == t", beta_law_term),
    p("beta_var_case", "subst m (Var x) (mapT m (match x) (Var v)) == Var v", beta_var_case),
    p("beta_var_match", "x == x1 -> subst Z (Var x) (mapT Z (match x) (Var x1)) == Var x1", beta_var_match),
    p("beta_var_nomatch", "x /= x1 -> subst Z (Var x) (mapT Z (match x) (Var x1)) == Var x1", beta_var_nomatch),
    p("map_fuse", "mapT (S (m + n)) Succ (mapT m Succ s) == mapT m Succ (mapT (m + n) Succ s)", map_fuse),
    p("map_subst_commute", "mapT n Succ (subst (n + m) s t) == subst (S (n + m)) s (mapT n Succ t)", map_subst_commute),
    p("beta_law_terme", "redexE (AppE (abstE x t) (VarE x)) == t, and its variable case", beta_law_terme),
    p(
        "cvt_subst_commute",
        "cvtE n (substE n s t) == subst n (cvtE Z s) (cvtE (S n) t), with lemmVar and lemmM",
        cvt_subst_commute,
    ),
    p("sum_consistency", "sumB v == sumAux v id == sum of the leaves", sum_consistency),
];

pub fn properties() -> &'static [Property] {
    PROPERTIES
}

pub fn property(name: &str) -> Option<&'static Property> {
    PROPERTIES.iter().find(|p| p.name == name)
}

/// A law that does not hold: a weighted cons algebra against a reference
/// fold with the weights swapped. Used to test the checker itself.
pub fn mutation_property() -> Property {
    p("mutation_weighted_cons", "foldB (2 r1 + r2) == general recursion (2 r2 + r1)", mutation)
}

// carriers and leaf functions

fn nat_carriers(b: &Bounds) -> Carriers {
    Carriers::new().with("a", CarrierSet::nats(b.nat_carrier)).with("b", CarrierSet::nats(b.nat_carrier))
}

fn char_carriers(b: &Bounds) -> Carriers {
    Carriers::new().with("a", CarrierSet::chars(&b.alphabet))
}

fn nat(v: &Value) -> Result<u64, EvalError> {
    nat_of(v)
}

/// Identity, a constant, successor and a non-injective function.
pub fn nat_leaf_fns() -> Vec<(&'static str, LeafFn)> {
    vec![
        ("id", leaf_fn(|x| Ok(x.clone()))),
        ("const0", leaf_fn(|_| Ok(Value::nat(0)))),
        ("succ", leaf_fn(|x| Ok(Value::nat(nat(x)? + 1)))),
        ("half", leaf_fn(|x| Ok(Value::nat(nat(x)? / 2)))),
    ]
}

/// Identity, a constant, rotation through the alphabet and a function
/// merging its first two letters.
pub fn char_leaf_fns(alphabet: &[char]) -> Vec<(&'static str, LeafFn)> {
    let rot = alphabet.to_vec();
    let first = alphabet[0];
    let second = *alphabet.get(1).unwrap_or(&first);
    let as_char = |x: &Value| match x {
        Value::Ground(Ground::Char(c)) => Ok(*c),
        _ => Err(EvalError::native("leaf", format!("`{x}` is not a character"))),
    };
    vec![
        ("id", leaf_fn(|x| Ok(x.clone()))),
        ("const", leaf_fn(move |_| Ok(Value::ch(first)))),
        (
            "next",
            leaf_fn(move |x| {
                let c = as_char(x)?;
                let k = rot.iter().position(|d| *d == c).map_or(0, |k| (k + 1) % rot.len());
                Ok(Value::ch(rot[k]))
            }),
        ),
        ("merge", leaf_fn(move |x| Ok(Value::ch(if as_char(x)? == second { first } else { as_char(x)? })))),
    ]
}

fn compose(f: &LeafFn, g: &LeafFn) -> LeafFn {
    let (f, g) = (f.clone(), g.clone());
    leaf_fn(move |x| f(&g(x)?))
}

fn bush_family() -> Family {
    Family::interpreted(nbush())
}

fn incr_family() -> Family {
    Family::interpreted(nincr())
}

fn d_indexes(b: &Bounds) -> Vec<IndexExpr> {
    folds().d.family.index_type().enumerate(b.d_depth)
}

// map laws

type Mapper = fn(usize, LeafFn, &Value) -> Result<Value, EvalError>;

/// Runs `law` over every (index, value) of the Nat-indexed families.
fn nat_indexed_domains(b: &Bounds, ctx: &mut Ctx, law: &dyn Fn(&mut Ctx, Mapper, usize, &Value, bool) -> Flow) -> Flow {
    let nats = nat_carriers(b);
    let chars = char_carriers(b);
    let fams: [(&str, Family, Mapper, usize, usize, bool); 4] = [
        ("bush", bush_family(), corpus::map_bush, b.bush_index, b.bush_size, true),
        ("term", incr_family(), corpus::map_incr, b.term_index, b.term_index + 1, false),
        ("term", term_family(), corpus::map_term, b.term_index, b.term_size, false),
        ("terme", terme_family(), corpus::map_terme, b.term_index, b.term_size, false),
    ];
    for (prog, fam, mapper, max_index, size, is_nat) in fams {
        let carriers = if is_nat { &nats } else { &chars };
        for n in 0..=max_index {
            for v in domain(program(prog), &fam, &IndexExpr::nat(n), carriers, size)? {
                law(ctx, mapper, n, &v, is_nat)?;
            }
        }
    }
    Ok(())
}

fn map_identity(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let id = leaf_fn(|x| Ok(x.clone()));
    nat_indexed_domains(b, ctx, &|ctx, map, n, v, _| ctx.case(&n, &[v], || map(n, id.clone(), v), || Ok(v.clone())))?;
    let nats = nat_carriers(b);
    for i in d_indexes(b) {
        for v in domain(program("d"), &folds().d.family, &i, &nats, b.d_size)? {
            ctx.case(&i, &[&v], || map_d(&i, id.clone(), id.clone(), &v), || Ok(v.clone()))?;
        }
    }
    Ok(())
}

fn map_compose(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let nf = nat_leaf_fns();
    let cf = char_leaf_fns(&b.alphabet);
    nat_indexed_domains(b, ctx, &|ctx, map, n, v, is_nat| {
        let fs = if is_nat { &nf } else { &cf };
        for (_, f) in fs {
            for (_, g) in fs {
                ctx.case(&n, &[v], || map(n, compose(f, g), v), || map(n, f.clone(), &map(n, g.clone(), v)?))?;
            }
        }
        Ok(())
    })?;
    let nats = nat_carriers(b);
    for i in d_indexes(b) {
        for v in domain(program("d"), &folds().d.family, &i, &nats, b.d_size)? {
            for (_, f) in &nf {
                for (_, g) in &nf {
                    ctx.case(
                        &i,
                        &[&v],
                        || map_d(&i, compose(f, g), compose(g, f), &v),
                        || map_d(&i, f.clone(), g.clone(), &map_d(&i, g.clone(), f.clone(), &v)?),
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn map_nil(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let nil = Value::leaf("NilB");
    for n in 1..=b.bush_index.max(1) {
        for (_, f) in nat_leaf_fns() {
            ctx.case(&n, &[&nil], || map_bush(n, f.clone(), &nil), || Ok(nil.clone()))?;
        }
    }
    Ok(())
}

fn map_cons(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let fam = bush_family();
    for v in domain(program("bush"), &fam, &IndexExpr::nat(1), &nat_carriers(b), b.bush_size)? {
        let Value::Con(c, kids) = &v else { continue };
        if c != "ConsB" {
            continue;
        }
        for (_, f) in nat_leaf_fns() {
            let lifted = {
                let f = f.clone();
                leaf_fn(move |y| map_bush(1, f.clone(), y))
            };
            ctx.case(
                &1,
                &[&v],
                || map_bush(1, f.clone(), &v),
                || Ok(Value::con("ConsB", vec![f(&kids[0])?, map_bush(1, lifted.clone(), &kids[1])?])),
            )?;
        }
    }
    Ok(())
}

fn add_map(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let fam = bush_family();
    let nats = nat_carriers(b);
    for total in 0..=b.bush_index {
        let vs = domain(program("bush"), &fam, &IndexExpr::nat(total), &nats, b.bush_size)?;
        for m in 0..=total {
            let n = total - m;
            for v in &vs {
                for (_, f) in nat_leaf_fns() {
                    let inner = {
                        let f = f.clone();
                        leaf_fn(move |y| map_bush(n, f.clone(), y))
                    };
                    ctx.case(
                        &format!("m={m} n={n}"),
                        &[v],
                        || map_bush(total, f.clone(), v),
                        || map_bush(m, inner.clone(), v),
                    )?;
                }
            }
        }
    }
    Ok(())
}

// higher-order fold of bushes

struct HAlg {
    base: u64,
    step: fn(u64, u64) -> u64,
}

fn algebras() -> Vec<HAlg> {
    vec![
        HAlg { base: 0, step: |x, r| x + r },
        HAlg { base: 1, step: |x, r| 2 * x + r },
        HAlg { base: 0, step: |x, r| x.max(r) },
        HAlg { base: 1, step: |_, r| r + 1 },
    ]
}

fn hfold_derived(a: &HAlg, v: &Value) -> Result<Value, EvalError> {
    let base = Value::nat(a.base);
    let step = a.step;
    let nil: CallFn = call_fn(move |_| Ok(base.clone()));
    let cons: CallFn = call_fn(move |xs| Ok(Value::nat(step(nat_of(&xs[0])?, nat_of(&xs[1])?))));
    hfold_bush(nil, cons, v)
}

fn hfold_reference(a: &HAlg, v: &Value) -> Result<Value, EvalError> {
    let step = a.step;
    reference::hfold_bush(&Value::nat(a.base), &|x, r| Ok(Value::nat(step(nat_of(x)?, nat_of(r)?))), v)
}

fn hfold_nil(_: &Bounds, ctx: &mut Ctx) -> Flow {
    let nil = Value::leaf("NilB");
    for a in algebras() {
        ctx.case(&1, &[&nil], || hfold_derived(&a, &nil), || Ok(Value::nat(a.base)))?;
    }
    Ok(())
}

fn hfold_cons(b: &Bounds, ctx: &mut Ctx) -> Flow {
    for v in domain(program("bush"), &bush_family(), &IndexExpr::nat(1), &nat_carriers(b), b.bush_size)? {
        let Value::Con(c, kids) = &v else { continue };
        if c != "ConsB" {
            continue;
        }
        for a in algebras() {
            let (x, xs) = (&kids[0], &kids[1]);
            ctx.case(
                &1,
                &[&v],
                || hfold_derived(&a, &v),
                || {
                    let fold_elem = {
                        let (base, step) = (a.base, a.step);
                        leaf_fn(move |y| hfold_derived(&HAlg { base, step }, y))
                    };
                    let inner = hfold_derived(&a, &map_bush(1, fold_elem, xs)?)?;
                    Ok(Value::nat((a.step)(nat_of(x)?, nat_of(&inner)?)))
                },
            )?;
        }
    }
    Ok(())
}

fn uniqueness_spotcheck(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let fam = bush_family();
    for n in 1..=b.bush_index.max(1) {
        for v in domain(program("bush"), &fam, &IndexExpr::nat(n), &nat_carriers(b), b.bush_size)? {
            for a in algebras() {
                let (base, step) = (a.base, a.step);
                let ours = leaf_fn(move |y| hfold_derived(&HAlg { base, step }, y));
                let theirs = leaf_fn(move |y| hfold_reference(&HAlg { base, step }, y));
                ctx.case(&n, &[&v], || lift_bush(n, ours, &v), || lift_bush(n, theirs, &v))?;
            }
        }
    }
    Ok(())
}

fn roundtrip_indexed(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let nats = nat_carriers(b);
    let rep = &folds().bush_n;
    for n in 0..=b.bush_index {
        let i = IndexExpr::nat(n);
        for v in domain(program("bush"), &bush_family(), &i, &nats, b.bush_size)? {
            ctx.case(&n, &[&v], || from_bush_n(n, &to_bush_n(n, &v)?), || Ok(v.clone()))?;
        }
        for w in domain(program("bush"), &rep.fold.family, &i, &nats, b.bush_size)? {
            ctx.case(&n, &[&w], || to_bush_n(n, &from_bush_n(n, &w)?), || Ok(w.clone()))?;
        }
    }
    Ok(())
}

// beta laws

fn letters(b: &Bounds) -> Vec<Value> {
    b.alphabet.iter().map(|c| Value::ch(*c)).collect()
}

fn beta_law_term(b: &Bounds, ctx: &mut Ctx) -> Flow {
    for t in domain(program("term"), &term_family(), &IndexExpr::nat(0), &char_carriers(b), b.term_size)? {
        for x in letters(b) {
            ctx.case(
                &0,
                &[&x, &t],
                || redex(&Value::con("App", vec![abst(&x, &t)?, Value::con("Var", vec![x.clone()])])),
                || Ok(t.clone()),
            )?;
        }
    }
    Ok(())
}

fn match_fn(x: &Value) -> LeafFn {
    let x = x.clone();
    leaf_fn(move |a| Ok(match_var(&x, a)))
}

fn var(x: &Value) -> Value {
    Value::con("Var", vec![x.clone()])
}

fn beta_var_case(b: &Bounds, ctx: &mut Ctx) -> Flow {
    for m in 0..=b.term_index {
        for v in domain(program("term"), &incr_family(), &IndexExpr::nat(m), &char_carriers(b), m + 1)? {
            for x in letters(b) {
                ctx.case(&m, &[&x, &v], || subst(m, &var(&x), &map_term(m, match_fn(&x), &var(&v))?), || Ok(var(&v)))?;
            }
        }
    }
    Ok(())
}

fn beta_var_split(b: &Bounds, ctx: &mut Ctx, equal: bool) -> Flow {
    for x in letters(b) {
        for x1 in letters(b) {
            if (x == x1) != equal {
                continue;
            }
            ctx.case(&0, &[&x, &x1], || subst(0, &var(&x), &map_term(0, match_fn(&x), &var(&x1))?), || Ok(var(&x1)))?;
        }
    }
    Ok(())
}

fn beta_var_match(b: &Bounds, ctx: &mut Ctx) -> Flow {
    beta_var_split(b, ctx, true)
}

fn beta_var_nomatch(b: &Bounds, ctx: &mut Ctx) -> Flow {
    beta_var_split(b, ctx, false)
}

// commutation lemmas

fn terms(b: &Bounds, n: usize, size: usize) -> Result<Vec<Value>, super::Halt> {
    domain(program("term"), &term_family(), &IndexExpr::nat(n), &char_carriers(b), size)
}

fn map_fuse(b: &Bounds, ctx: &mut Ctx) -> Flow {
    for total in 0..=b.term_index {
        let ss = terms(b, total, b.lemma_size)?;
        for m in 0..=total {
            let n = total - m;
            for s in &ss {
                ctx.case(
                    &format!("m={m} n={n}"),
                    &[s],
                    || map_term(total + 1, succ_fn(), &map_term(m, succ_fn(), s)?),
                    || map_term(m, succ_fn(), &map_term(total, succ_fn(), s)?),
                )?;
            }
        }
    }
    Ok(())
}

fn map_subst_commute(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let ss = terms(b, 0, b.pair_size)?;
    for total in 0..=b.term_index {
        let ts = terms(b, total + 1, b.lemma_size)?;
        for n in 0..=total {
            for t in &ts {
                for s in &ss {
                    ctx.case(
                        &format!("n={n} m={}", total - n),
                        &[s, t],
                        || map_term(n, succ_fn(), &subst(total, s, t)?),
                        || subst(total + 1, s, &map_term(n, succ_fn(), t)?),
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn terms_e(b: &Bounds, n: usize, size: usize) -> Result<Vec<Value>, super::Halt> {
    domain(program("terme"), &terme_family(), &IndexExpr::nat(n), &char_carriers(b), size)
}

fn beta_law_terme(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let var_e = |x: &Value| Value::con("VarE", vec![x.clone()]);
    for t in terms_e(b, 0, b.term_size)? {
        for x in letters(b) {
            ctx.case(
                &0,
                &[&x, &t],
                || redex_terme(&Value::con("AppE", vec![abst_terme(&x, &t)?, var_e(&x)])),
                || Ok(t.clone()),
            )?;
        }
    }
    for x in letters(b) {
        for y in letters(b) {
            let mx = {
                let x = x.clone();
                leaf_fn(move |a| Ok(match_var_e(&x, a)))
            };
            ctx.case(&0, &[&x, &y], || subst_terme(0, &var_e(&x), &map_terme(0, mx, &var_e(&y))?), || Ok(var_e(&y)))?;
        }
    }
    Ok(())
}

fn cvt_subst_commute(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let ss = terms_e(b, 0, b.pair_size)?;
    for n in 0..=b.term_index.min(2) {
        for t in terms_e(b, n + 1, b.lemma_size)? {
            for s in &ss {
                ctx.case(
                    &n,
                    &[s, &t],
                    || cvt_terme(n, &subst_terme(n, s, &t)?),
                    || subst(n, &cvt_terme(0, s)?, &cvt_terme(n + 1, &t)?),
                )?;
            }
        }
    }
    // lemmVar: the variable case at index zero
    let incr_terme_fam = Family::interpreted(incr_terme());
    for x in domain(program("terme"), &incr_terme_fam, &IndexExpr::nat(1), &char_carriers(b), b.lemma_size)? {
        let t = Value::con("VarE", vec![x.clone()]);
        for s in &ss {
            ctx.case(
                &"lemmVar",
                &[&x, s],
                || cvt_terme(0, &subst_terme(0, s, &t)?),
                || subst(0, &cvt_terme(0, s)?, &cvt_terme(1, &t)?),
            )?;
        }
    }
    // lemmM: t == subst m s (mapT m Succ t)
    let plain = terms(b, 0, b.pair_size)?;
    for m in 0..=b.term_index.min(2) {
        for t in terms(b, m, b.lemma_size)? {
            for s in &plain {
                ctx.case(
                    &format!("lemmM m={m}"),
                    &[s, &t],
                    || Ok(t.clone()),
                    || subst(m, s, &map_term(m, succ_fn(), &t)?),
                )?;
            }
        }
    }
    Ok(())
}

fn sum_consistency(b: &Bounds, ctx: &mut Ctx) -> Flow {
    for v in domain(program("bush"), &bush_family(), &IndexExpr::nat(1), &nat_carriers(b), b.bush_size)? {
        ctx.case(&1, &[&v], || sum_bush(&v), || sum_bush_cps(&v))?;
        ctx.case(&1, &[&v], || sum_bush(&v), || Ok(Value::nat(reference::sum_grounds(&v))))?;
    }
    Ok(())
}

fn mutation(b: &Bounds, ctx: &mut Ctx) -> Flow {
    let alg = crate::interp::Algebra::new()
        .replace("base", crate::derive::Template::Slot("x".into()))
        .constant("nil", Value::nat(0))
        .native("cons", "weighted", |a| Ok(Value::nat(2 * a.nat_arg(0)? + a.nat_arg(1)?)));
    for v in domain(program("bush"), &bush_family(), &IndexExpr::nat(1), &nat_carriers(b), b.bush_size)? {
        ctx.case(
            &1,
            &[&v],
            || crate::interp::eval_fold(&folds().b, &alg, &IndexExpr::nat(1), &v),
            || reference::hfold_bush(&Value::nat(0), &|x, r| Ok(Value::nat(nat_of(x)? + 2 * nat_of(r)?)), &v),
        )?;
    }
    Ok(())
}
