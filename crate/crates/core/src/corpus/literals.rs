//! Example values.

use crate::interp::{parse_value, Value};

fn lit(src: &str) -> Value {
    parse_value(src).unwrap_or_else(|e| panic!("corpus literal: {e}"))
}

/// Reads list notation for bushes: `[x1, .., xn]` is
/// `ConsB x1 (.. (ConsB xn NilB))`, numbers are naturals.
pub fn bush_list(src: &str) -> Result<Value, String> {
    fn item(s: &[u8], at: &mut usize) -> Result<Value, String> {
        while *at < s.len() && s[*at] == b' ' {
            *at += 1;
        }
        match s.get(*at) {
            Some(b'[') => {
                *at += 1;
                let mut xs = Vec::new();
                loop {
                    while *at < s.len() && s[*at] == b' ' {
                        *at += 1;
                    }
                    match s.get(*at) {
                        Some(b']') => {
                            *at += 1;
                            break;
                        }
                        Some(b',') if !xs.is_empty() => *at += 1,
                        _ if xs.is_empty() => {}
                        _ => return Err(format!("expected `,` or `]` at {}", *at)),
                    }
                    xs.push(item(s, at)?);
                }
                Ok(xs.into_iter().rev().fold(Value::leaf("NilB"), |acc, x| Value::con("ConsB", vec![x, acc])))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = *at;
                while *at < s.len() && s[*at].is_ascii_digit() {
                    *at += 1;
                }
                let txt = std::str::from_utf8(&s[start..*at]).expect("ascii");
                txt.parse().map(Value::nat).map_err(|e| format!("{txt}: {e}"))
            }
            _ => Err(format!("unexpected input at {}", *at)),
        }
    }
    let bytes = src.trim().as_bytes();
    let mut at = 0;
    let v = item(bytes, &mut at)?;
    if at != bytes.len() {
        return Err(format!("trailing input at {at}"));
    }
    Ok(v)
}

/// `[4, [8,[5],[[3]]], [[7],[],[[[7]]]], [[[],[[0]]]]]`.
pub fn bush1() -> Value {
    bush_list("[4, [8,[5],[[3]]], [[7],[],[[[7]]]], [[[],[[0]]]]]").expect("bush1")
}

/// `Succ (Succ Zero)`, read at `NIncr 5 Char`.
pub fn num0() -> Value {
    lit("Succ[Succ[Zero]]")
}

pub fn term1_t() -> Value {
    lit("Lam[App[Var[Zero], Lam[App[App[Var[Succ[Zero]], Var[Zero]], \
         Lam[App[App[Var[Succ[Succ[Zero]]], Var[Succ[Zero]]], Var[Zero]]]]]]]")
}

pub fn term2_t() -> Value {
    lit("Lam[Lam[App[App[Var[Succ[Zero]], Var[Zero]], Var[Succ[Succ['W']]]]]]")
}

pub fn term1() -> Value {
    lit("LamE[AppE[VarE[Zero], VarE[Succ[VarE['W']]]]]")
}

pub fn term2() -> Value {
    let t1 = term1();
    lit(&format!(
        "AppE[{t1}, LamE[AppE[AppE[VarE[Succ[{t1}]], VarE[Zero]], \
         LamE[AppE[AppE[VarE[Succ[VarE[Succ[{t1}]]]], VarE[Succ[VarE[Zero]]]], VarE[Zero]]]]]]"
    ))
}

/// `(λ. 0 (λ. 1 0 (λ. 2 1 0))) term1` with explicit substitution.
pub fn redex_e() -> Value {
    lit(&format!(
        "AppE[LamE[AppE[VarE[Zero], LamE[AppE[AppE[VarE[Succ[VarE[Zero]]], VarE[Zero]], \
         LamE[AppE[AppE[VarE[Succ[VarE[Succ[VarE[Zero]]]]], VarE[Succ[VarE[Zero]]]], VarE[Zero]]]]]]], {}]",
        term1()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_notation() {
        assert_eq!(bush_list("[]").unwrap(), Value::leaf("NilB"));
        assert_eq!(bush_list("[[3]]").unwrap().to_agda(), "ConsB (ConsB 3 NilB) NilB");
        assert!(bush_list("[1 2]").is_err());
    }

    #[test]
    fn bush1_spine() {
        let mut v = bush1();
        let mut n = 0;
        while let Value::Con(c, kids) = &v {
            if c == "NilB" {
                break;
            }
            n += 1;
            v = kids[1].clone();
        }
        assert_eq!(n, 4);
    }
}
