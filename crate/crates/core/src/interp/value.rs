//! Finite constructor trees with ground leaves.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ground {
    Nat(u64),
    Char(char),
    Text(String),
}

impl fmt::Display for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ground::Nat(n) => write!(f, "{n}"),
            Ground::Char(c) => write!(f, "{c:?}"),
            Ground::Text(s) => write!(f, "{s:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Value {
    Con(String, Vec<Value>),
    Ground(Ground),
}

impl Value {
    pub fn con(name: &str, children: Vec<Value>) -> Value {
        Value::Con(name.to_string(), children)
    }

    pub fn leaf(name: &str) -> Value {
        Value::Con(name.to_string(), Vec::new())
    }

    pub fn nat(n: u64) -> Value {
        Value::Ground(Ground::Nat(n))
    }

    pub fn ch(c: char) -> Value {
        Value::Ground(Ground::Char(c))
    }

    pub fn text(s: &str) -> Value {
        Value::Ground(Ground::Text(s.to_string()))
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Value::Ground(Ground::Nat(n)) => Some(*n),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Ground(Ground::Text(s)) => Some(s),
            _ => None,
        }
    }

    pub fn head(&self) -> Option<&str> {
        match self {
            Value::Con(c, _) => Some(c),
            Value::Ground(_) => None,
        }
    }

    pub fn children(&self) -> &[Value] {
        match self {
            Value::Con(_, kids) => kids,
            Value::Ground(_) => &[],
        }
    }

    /// `Succ^k base`.
    pub fn succs(k: usize, base: Value) -> Value {
        (0..k).fold(base, |v, _| Value::con("Succ", vec![v]))
    }

    /// Rendering with application by juxtaposition, e.g. `ConsB 4 NilB`.
    pub fn to_agda(&self) -> String {
        fn go(v: &Value, atom: bool, out: &mut String) {
            match v {
                Value::Ground(g) => out.push_str(&g.to_string()),
                Value::Con(c, kids) if kids.is_empty() => out.push_str(c),
                Value::Con(c, kids) => {
                    if atom {
                        out.push('(');
                    }
                    out.push_str(c);
                    for k in kids {
                        out.push(' ');
                        go(k, true, out);
                    }
                    if atom {
                        out.push(')');
                    }
                }
            }
        }
        let mut s = String::new();
        go(self, false, &mut s);
        s
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Ground(g) => write!(f, "{g}"),
            Value::Con(c, kids) if kids.is_empty() => f.write_str(c),
            Value::Con(c, kids) => {
                write!(f, "{c}[")?;
                for (k, v) in kids.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Node count: grounds and constructors count one each.
pub fn value_size(v: &Value) -> usize {
    match v {
        Value::Ground(_) => 1,
        Value::Con(_, kids) => 1 + kids.iter().map(value_size).sum::<usize>(),
    }
}

pub fn value_eq(u: &Value, v: &Value) -> bool {
    u == v
}

/// Whether `sub` occurs strictly below the root of `parent`.
pub fn is_strict_subterm(sub: &Value, parent: &Value) -> bool {
    parent.children().iter().any(|k| k == sub || is_strict_subterm(sub, k))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("value literal, offset {offset}: {msg}")]
pub struct LiteralError {
    pub offset: usize,
    pub msg: String,
}

struct LitParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> LitParser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LiteralError> {
        Err(LiteralError { offset: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn escaped(&mut self, quote: char) -> Result<String, LiteralError> {
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return self.err("unterminated literal"),
                Some(c) if c == quote => return Ok(s),
                Some('\\') => match self.bump() {
                    Some('n') => s.push('\n'),
                    Some('t') => s.push('\t'),
                    Some(c @ ('\\' | '\'' | '"')) => s.push(c),
                    _ => return self.err("bad escape"),
                },
                Some(c) => s.push(c),
            }
        }
    }

    fn value(&mut self) -> Result<Value, LiteralError> {
        self.ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                match self.src[start..self.pos].parse() {
                    Ok(n) => Ok(Value::nat(n)),
                    Err(_) => self.err("number out of range"),
                }
            }
            Some('\'') => {
                self.bump();
                let s = self.escaped('\'')?;
                let mut cs = s.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => Ok(Value::ch(c)),
                    _ => self.err("character literal must hold one character"),
                }
            }
            Some('"') => {
                self.bump();
                Ok(Value::Ground(Ground::Text(self.escaped('"')?)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                    self.bump();
                }
                let name = self.src[start..self.pos].to_string();
                self.ws();
                let mut kids = Vec::new();
                if self.peek() == Some('[') {
                    self.bump();
                    self.ws();
                    if self.peek() == Some(']') {
                        self.bump();
                    } else {
                        loop {
                            kids.push(self.value()?);
                            self.ws();
                            match self.bump() {
                                Some(',') => continue,
                                Some(']') => break,
                                _ => return self.err("expected `,` or `]`"),
                            }
                        }
                    }
                }
                Ok(Value::Con(name, kids))
            }
            _ => self.err("expected a value"),
        }
    }
}

/// Parses `ConsB[4, NilB]`, `4`, `'W'`, `"Ze"`.
pub fn parse_value(src: &str) -> Result<Value, LiteralError> {
    let mut p = LitParser { src, pos: 0 };
    let v = p.value()?;
    p.ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

impl std::str::FromStr for Value {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_value(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sizes() {
        assert_eq!(value_size(&Value::nat(4)), 1);
        assert_eq!(value_size(&Value::leaf("NilB")), 1);
        assert_eq!(value_size(&"ConsB[5, NilB]".parse().unwrap()), 3);
    }

    #[test]
    fn literals() {
        let v: Value = "ConsB[4, NilB]".parse().unwrap();
        assert_eq!(v, Value::con("ConsB", vec![Value::nat(4), Value::leaf("NilB")]));
        assert_eq!(v.to_string(), "ConsB[4, NilB]");
        assert_eq!(v.to_agda(), "ConsB 4 NilB");
        assert_eq!(parse_value("'W'").unwrap(), Value::ch('W'));
        assert_eq!(parse_value("\"Ze\"").unwrap(), Value::text("Ze"));
        assert_eq!(parse_value("Nil[]").unwrap(), Value::leaf("Nil"));
        assert!(parse_value("ConsB[4,").is_err());
        assert!(parse_value("'ab'").is_err());
        assert!(parse_value("A B").is_err());
    }

    #[test]
    fn equality() {
        let b: Value = "ConsB[0, NilB]".parse().unwrap();
        assert!(value_eq(&b, &b));
        assert!(!value_eq(&Value::leaf("NilB"), &b));
    }

    #[test]
    fn subterms() {
        let v: Value = "ConsB[ConsB[1, NilB], NilB]".parse().unwrap();
        assert!(is_strict_subterm(&"ConsB[1, NilB]".parse().unwrap(), &v));
        assert!(is_strict_subterm(&Value::nat(1), &v));
        assert!(!is_strict_subterm(&v, &v));
    }

    fn arb_value() -> impl Strategy<Value = Value> {
        let leaf = prop_oneof![
            (0u64..5).prop_map(Value::nat),
            prop::sample::select(vec!['W', 'c', 'x', 'y', '\'', '\\']).prop_map(Value::ch),
            "[a-z\"\\\\]{0,3}".prop_map(|s| Value::text(&s)),
            prop::sample::select(vec!["NilB", "Zero", "Nil"]).prop_map(Value::leaf),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            (prop::sample::select(vec!["ConsB", "Succ", "App"]), prop::collection::vec(inner, 1..3))
                .prop_map(|(c, kids)| Value::con(c, kids))
        })
    }

    fn deep_eq(u: &Value, v: &Value) -> bool {
        match (u, v) {
            (Value::Ground(a), Value::Ground(b)) => a == b,
            (Value::Con(c, xs), Value::Con(d, ys)) => {
                c == d && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| deep_eq(x, y))
            }
            _ => false,
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn literal_round_trip(v in arb_value()) {
            prop_assert_eq!(parse_value(&v.to_string()).unwrap(), v.clone());
            let json = serde_json::to_string(&v).unwrap();
            prop_assert_eq!(serde_json::from_str::<Value>(&json).unwrap(), v);
        }

        #[test]
        fn value_eq_agrees_with_deep_comparison(u in arb_value(), v in arb_value()) {
            prop_assert_eq!(value_eq(&u, &v), deep_eq(&u, &v));
            prop_assert!(value_eq(&u, &u.clone()));
        }

        #[test]
        fn size_counts_nodes(v in arb_value()) {
            let n = value_size(&v);
            let kids: usize = v.children().iter().map(value_size).sum();
            prop_assert_eq!(n, if v.head().is_some() { 1 + kids } else { 1 });
        }
    }
}
