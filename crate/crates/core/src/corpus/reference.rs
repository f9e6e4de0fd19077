//! General-recursive definitions used as independent oracles. These are
//! not folds: their recursive calls go through `hmapB`.

use super::functions::Res;
use crate::interp::{EvalError, Ground, Value};

type F<'a> = &'a dyn Fn(&Value) -> Res;

fn split(v: &Value) -> Result<Option<(&Value, &Value)>, EvalError> {
    match v {
        Value::Con(c, kids) if c == "NilB" && kids.is_empty() => Ok(None),
        Value::Con(c, kids) if c == "ConsB" && kids.len() == 2 => Ok(Some((&kids[0], &kids[1]))),
        _ => Err(EvalError::native("bush", format!("`{v}` is not a bush"))),
    }
}

/// `hmapB f NilB = NilB; hmapB f (ConsB x xs) = ConsB (f x) (hmapB (hmapB f) xs)`.
pub fn hmap_bush(f: F<'_>, v: &Value) -> Res {
    match split(v)? {
        None => Ok(v.clone()),
        Some((x, xs)) => Ok(Value::con("ConsB", vec![f(x)?, hmap_bush(&|y| hmap_bush(f, y), xs)?])),
    }
}

/// `hfoldB base step (ConsB x xs) = step x (hfoldB base step (hmapB (hfoldB base step) xs))`.
pub fn hfold_bush(base: &Value, step: &dyn Fn(&Value, &Value) -> Res, v: &Value) -> Res {
    match split(v)? {
        None => Ok(base.clone()),
        Some((x, xs)) => {
            let inner = hmap_bush(&|y| hfold_bush(base, step, y), xs)?;
            step(x, &hfold_bush(base, step, &inner)?)
        }
    }
}

/// `mapB n f` by plain recursion on `n`.
pub fn map_bush(n: usize, f: F<'_>, v: &Value) -> Res {
    match n {
        0 => f(v),
        _ => match split(v)? {
            None => Ok(v.clone()),
            Some((x, xs)) => Ok(Value::con("ConsB", vec![map_bush(n - 1, f, x)?, map_bush(n + 1, f, xs)?])),
        },
    }
}

/// Every ground leaf, left to right.
pub fn grounds(v: &Value) -> Vec<&Ground> {
    fn go<'a>(v: &'a Value, out: &mut Vec<&'a Ground>) {
        match v {
            Value::Ground(g) => out.push(g),
            Value::Con(_, kids) => kids.iter().for_each(|k| go(k, out)),
        }
    }
    let mut out = Vec::new();
    go(v, &mut out);
    out
}

/// Sum of every natural in a value.
pub fn sum_grounds(v: &Value) -> u64 {
    grounds(v).into_iter().map(|g| if let Ground::Nat(n) = g { *n } else { 0 }).sum()
}

/// Length of the top-level `ConsB` spine.
pub fn spine_length(v: &Value) -> u64 {
    match v {
        Value::Con(c, kids) if c == "ConsB" => 1 + spine_length(&kids[1]),
        _ => 0,
    }
}
