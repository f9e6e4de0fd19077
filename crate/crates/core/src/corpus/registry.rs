//! The named registry behind `corpus list` and `eval`.

use serde::Serialize;

use super::functions::*;
use super::literals::*;
use super::{folds, program, specs};
use crate::derive::{Family, IndexExpr};
use crate::interp::{check_value, value_size, CarrierSet, Carriers, EvalError, Value};
use crate::syntax::Program;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Declaration,
    Interpretation,
    FoldSpec,
    Function,
    Literal,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Declaration => "declaration",
            EntryKind::Interpretation => "interpretation",
            EntryKind::FoldSpec => "fold-spec",
            EntryKind::Function => "function",
            EntryKind::Literal => "literal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub kind: EntryKind,
    pub group: &'static str,
    pub about: &'static str,
}

const fn e(name: &'static str, kind: EntryKind, group: &'static str, about: &'static str) -> CorpusEntry {
    CorpusEntry { name, kind, group, about }
}

use EntryKind::*;

const ENTRIES: &[CorpusEntry] = &[
    e("Nat", Declaration, "base", "Z | S Nat"),
    e("Bool", Declaration, "base", "True | False"),
    e("List", Declaration, "base", "Nil | Cons a (List a)"),
    e("Bush", Declaration, "bush", "NilB | ConsB a (Bush (Bush a))"),
    e("Incr", Declaration, "term", "Zero | Succ a"),
    e("Term", Declaration, "term", "Var a | App | Lam (Term (Incr a))"),
    e("TermE", Declaration, "terme", "VarE a | AppE | LamE (TermE (Incr (TermE a)))"),
    e("I", Declaration, "d", "Zero | Succ a (I (I a))"),
    e("D", Declaration, "d", "DNil | DCons | ACons"),
    e("NBush", Interpretation, "bush", "n layers of Bush"),
    e("NIncr", Interpretation, "term", "n layers of Incr"),
    e("IncrTermE", Interpretation, "terme", "n layers of Incr (TermE _)"),
    e("foldB", FoldSpec, "bush", "Nat-indexed fold of Bush"),
    e("foldBN", FoldSpec, "bush", "fold of the indexed representation BushN"),
    e("foldI", FoldSpec, "term", "Nat-indexed fold of Incr"),
    e("foldT", FoldSpec, "term", "Nat-indexed fold of Term"),
    e("foldE", FoldSpec, "terme", "Nat-indexed fold of TermE"),
    e("foldD", FoldSpec, "d", "derived fold of D"),
    e("sumB", Function, "bush", "sum of a Bush Nat"),
    e("lengthB", Function, "bush", "length of the top-level spine"),
    e("mapB", Function, "bush", "mapB n, here with successor"),
    e("hfoldB", Function, "bush", "higher-order fold, here summing"),
    e("lift", Function, "bush", "lift n g, here g keeps the first element"),
    e("sumAux", Function, "bush", "continuation-passing sum through hfoldB"),
    e("toBushN", Function, "bush", "NBush n a to BushN n a"),
    e("fromBushN", Function, "bush", "BushN n a to NBush n a"),
    e("mapIncr", Function, "term", "mapIncr n Succ"),
    e("foldI'", Function, "term", "regular fold of Incr Nat, Zero to 0"),
    e("showI", Function, "term", "shows an NIncr n String"),
    e("mapT", Function, "term", "mapT n Succ"),
    e("hfoldT", Function, "term", "higher-order fold, here counting variables"),
    e("showT", Function, "term", "shows a Term String"),
    e("showTC", Function, "term", "shows a Term Char"),
    e("abst", Function, "term", "abst x t"),
    e("subst", Function, "term", "subst n s t"),
    e("varcase", Function, "term", "varcase n s v"),
    e("redex", Function, "term", "one root beta step"),
    e("mapE", Function, "terme", "mapE n Succ"),
    e("hfoldE", Function, "terme", "higher-order fold, here counting variables"),
    e("abstE", Function, "terme", "abstE x t"),
    e("substE", Function, "terme", "substE n s t"),
    e("redexE", Function, "terme", "one root beta step, sharing the argument"),
    e("cvtE", Function, "terme", "cvtE n: TermE to Term"),
    e("mapD", Function, "d", "mapD at IsD VarA VarB, successor on both"),
    e("sumD", Function, "d", "sum of a D Nat Nat"),
    e("sumI", Function, "d", "sum of an I Nat through foldD"),
    e("bush1", Literal, "bush", "a Bush Nat of sum 34"),
    e("num0", Literal, "term", "Succ (Succ Zero) : NIncr 5 Char"),
    e("term1T", Literal, "term", "Term Char"),
    e("term2T", Literal, "term", "Term Char"),
    e("term1", Literal, "terme", "TermE Char"),
    e("term2", Literal, "terme", "TermE Char"),
    e("redex1", Literal, "terme", "(λ.0 (λ.1 0 (λ.2 1 0))) term1"),
];

pub fn entries() -> &'static [CorpusEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn literal(name: &str) -> Option<Value> {
    Some(match name {
        "bush1" => bush1(),
        "num0" => num0(),
        "term1T" => term1_t(),
        "term2T" => term2_t(),
        "term1" => term1(),
        "term2" => term2(),
        "redex1" => redex_e(),
        _ => return None,
    })
}

fn nats() -> Carriers {
    Carriers::new().with("a", CarrierSet::AllNats).with("b", CarrierSet::AllNats)
}

fn chars() -> Carriers {
    Carriers::new().with("a", CarrierSet::AllChars)
}

fn texts() -> Carriers {
    Carriers::new().with("a", CarrierSet::AllText)
}

struct Input {
    prog: &'static Program,
    family: Family,
    index: IndexExpr,
    carriers: Carriers,
}

fn at(prog: &'static Program, family: Family, index: IndexExpr, carriers: Carriers) -> Input {
    Input { prog, family, index, carriers }
}

fn nat_idx(n: usize) -> IndexExpr {
    IndexExpr::nat(n)
}

/// Argument types of a callable entry; `n` is the `--index` value.
fn inputs(name: &str, n: usize) -> Option<Vec<Input>> {
    let bush = |k, c| at(program("bush"), Family::interpreted(specs::nbush()), nat_idx(k), c);
    let bush_n = |k| at(program("bush"), folds().bush_n.fold.family.clone(), nat_idx(k), nats());
    let incr = |k, c| at(program("term"), Family::interpreted(specs::nincr()), nat_idx(k), c);
    let term = |k, c| at(program("term"), specs::term_family(), nat_idx(k), c);
    let terme = |k, c| at(program("terme"), specs::terme_family(), nat_idx(k), c);
    let d = |i| at(program("d"), folds().d.family.clone(), i, nats());
    let ground = |c: Carriers| at(program("term"), Family::interpreted(specs::nincr()), nat_idx(0), c);
    Some(match name {
        "sumB" | "lengthB" | "hfoldB" | "sumAux" => vec![bush(1, nats())],
        "mapB" | "toBushN" | "lift" => vec![bush(n, nats())],
        "fromBushN" => vec![bush_n(n)],
        "mapIncr" => vec![incr(n, chars())],
        "foldI'" => vec![incr(1, nats())],
        "showI" => vec![incr(n, texts())],
        "mapT" => vec![term(n, chars())],
        "hfoldT" | "redex" | "showTC" => vec![term(0, chars())],
        "showT" => vec![term(0, texts())],
        "abst" => vec![ground(chars()), term(0, chars())],
        "subst" => vec![term(0, chars()), term(n + 1, chars())],
        "varcase" => vec![term(0, chars()), incr(n + 1, chars())],
        "mapE" | "cvtE" => vec![terme(n, chars())],
        "hfoldE" | "redexE" => vec![terme(0, chars())],
        "abstE" => vec![ground(chars()), terme(0, chars())],
        "substE" => vec![terme(0, chars()), terme(n + 1, chars())],
        "mapD" | "sumD" => vec![d(d_index())],
        "sumI" => vec![d(i_index())],
        _ => return None,
    })
}

fn succ_nat() -> crate::interp::LeafFn {
    leaf_fn(|v| Ok(Value::nat(nat_of(v)? + 1)))
}

fn count_vars() -> (crate::interp::CallFn, crate::interp::CallFn, crate::interp::CallFn) {
    (
        call_fn(|_| Ok(Value::nat(1))),
        call_fn(|xs| Ok(Value::nat(nat_of(&xs[0])? + nat_of(&xs[1])?))),
        call_fn(|xs| Ok(xs[0].clone())),
    )
}

/// Runs a callable entry without checking its arguments.
pub fn call(name: &str, n: usize, args: &[Value]) -> Result<Value, EvalError> {
    let arg = |k: usize| args.get(k).ok_or_else(|| EvalError::native(name, format!("missing argument {}", k + 1)));
    match name {
        "sumB" => sum_bush(arg(0)?),
        "lengthB" => length_bush(arg(0)?),
        "mapB" => map_bush(n, succ_nat(), arg(0)?),
        "hfoldB" => hfold_bush(
            call_fn(|_| Ok(Value::nat(0))),
            call_fn(|xs| Ok(Value::nat(nat_of(&xs[0])? + nat_of(&xs[1])?))),
            arg(0)?,
        ),
        "lift" => lift_bush(
            n,
            leaf_fn(|b| match b {
                Value::Con(c, kids) if c == "ConsB" => {
                    Ok(Value::con("ConsB", vec![kids[0].clone(), Value::leaf("NilB")]))
                }
                _ => Ok(b.clone()),
            }),
            arg(0)?,
        ),
        "sumAux" => sum_bush_cps(arg(0)?),
        "toBushN" => to_bush_n(n, arg(0)?),
        "fromBushN" => from_bush_n(n, arg(0)?),
        "mapIncr" => map_incr(n, succ_fn(), arg(0)?),
        "foldI'" => fold_incr_regular(Value::nat(0), succ_nat(), arg(0)?),
        "showI" => show_incr(n, arg(0)?),
        "mapT" => map_term(n, succ_fn(), arg(0)?),
        "hfoldT" => {
            let (v, a, l) = count_vars();
            hfold_term(v, a, l, arg(0)?)
        }
        "showT" => show_term(arg(0)?),
        "showTC" => show_term_chars(arg(0)?),
        "abst" => abst(arg(0)?, arg(1)?),
        "subst" => subst(n, arg(0)?, arg(1)?),
        "varcase" => varcase(n, arg(0)?, arg(1)?),
        "redex" => redex(arg(0)?),
        "mapE" => map_terme(n, succ_fn(), arg(0)?),
        "hfoldE" => {
            let (v, a, l) = count_vars();
            hfold_terme(v, a, l, arg(0)?)
        }
        "abstE" => abst_terme(arg(0)?, arg(1)?),
        "substE" => subst_terme(n, arg(0)?, arg(1)?),
        "redexE" => redex_terme(arg(0)?),
        "cvtE" => cvt_terme(n, arg(0)?),
        "mapD" => map_d(&d_index(), succ_nat(), succ_nat(), arg(0)?),
        "sumD" => sum_d(arg(0)?),
        "sumI" => sum_i(arg(0)?),
        _ => Err(EvalError::UnknownFunction(name.to_string())),
    }
}

/// Type-checks the arguments against the entry's input types, then runs it.
pub fn eval_named(name: &str, n: usize, args: &[Value]) -> Result<Value, EvalError> {
    let ins = inputs(name, n).ok_or_else(|| EvalError::UnknownFunction(name.to_string()))?;
    if ins.len() != args.len() {
        return Err(EvalError::native(name, format!("expects {} value argument(s), got {}", ins.len(), args.len())));
    }
    if name == "mapIncr" {
        deeper_incr(n, &args[0])?;
        return call(name, n, args);
    }
    for (i, v) in ins.iter().zip(args) {
        check_value(i.prog, &i.family, &i.index, &i.carriers, v)?;
    }
    call(name, n, args)
}

/// `mapIncr n` takes an `NIncr m Char` for any `m >= n`.
fn deeper_incr(n: usize, v: &Value) -> Result<(), EvalError> {
    let fam = Family::interpreted(specs::nincr());
    let mut err = None;
    for m in n..=n + value_size(v) {
        match check_value(program("term"), &fam, &nat_idx(m), &chars(), v) {
            Ok(()) => return Ok(()),
            Err(e) => err = err.or(Some(e)),
        }
    }
    Err(err.expect("at least one depth tried").into())
}

/// Whether `name` can be run by `eval_named`.
pub fn is_callable(name: &str) -> bool {
    inputs(name, 0).is_some()
}
