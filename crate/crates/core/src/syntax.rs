//! Surface syntax for nested data type declarations.
//!
//! A program is a sequence of declarations of the form
//!
//! ```text
//! data Bush (a) where
//!   NilB : Bush a
//!   ConsB : a -> Bush (Bush a) -> Bush a
//! ```
//!
//! Parameters are all of base kind. Constructor arguments must be first-order
//! applications of declared type constructors and parameters; this is enforced
//! by [`kind_check`], not by the parser.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Line/column of a syntax node. Ignored by equality so that a reparsed
/// program compares equal to the original.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeExpr {
    Var(String),
    App(String, Vec<TypeExpr>),
    /// Only produced by the parser so that [`kind_check`] can reject it with a
    /// useful message.
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    pub fn var(name: &str) -> Self {
        TypeExpr::Var(name.to_string())
    }

    pub fn app(con: &str, args: Vec<TypeExpr>) -> Self {
        TypeExpr::App(con.to_string(), args)
    }

    pub fn con(con: &str) -> Self {
        TypeExpr::App(con.to_string(), Vec::new())
    }

    fn is_atomic(&self) -> bool {
        match self {
            TypeExpr::Var(_) => true,
            TypeExpr::App(_, args) => args.is_empty(),
            TypeExpr::Arrow(..) => false,
        }
    }

    /// Calls `f` on every type-constructor name in pre-order.
    pub fn for_each_con(&self, f: &mut impl FnMut(&str)) {
        match self {
            TypeExpr::Var(_) => {}
            TypeExpr::App(con, args) => {
                f(con);
                for a in args {
                    a.for_each_con(f);
                }
            }
            TypeExpr::Arrow(l, r) => {
                l.for_each_con(f);
                r.for_each_con(f);
            }
        }
    }

    /// Replaces parameter variables according to `sub`; unmapped variables stay.
    pub fn substitute(&self, sub: &BTreeMap<String, TypeExpr>) -> TypeExpr {
        match self {
            TypeExpr::Var(v) => sub.get(v).cloned().unwrap_or_else(|| self.clone()),
            TypeExpr::App(c, args) => TypeExpr::App(c.clone(), args.iter().map(|a| a.substitute(sub)).collect()),
            TypeExpr::Arrow(l, r) => TypeExpr::Arrow(Box::new(l.substitute(sub)), Box::new(r.substitute(sub))),
        }
    }

    /// Renders as an argument: parenthesized unless atomic.
    pub fn to_atom_string(&self) -> String {
        if self.is_atomic() {
            self.to_string()
        } else {
            format!("({self})")
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Var(v) => f.write_str(v),
            TypeExpr::App(c, args) => {
                f.write_str(c)?;
                for a in args {
                    write!(f, " {}", a.to_atom_string())?;
                }
                Ok(())
            }
            TypeExpr::Arrow(l, r) => {
                if matches!(**l, TypeExpr::Arrow(..)) {
                    write!(f, "({l}) -> {r}")
                } else {
                    write!(f, "{l} -> {r}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructorDecl {
    pub name: String,
    pub arg_types: Vec<TypeExpr>,
    /// The declared result type, kept so that malformed results can be reported.
    pub result: TypeExpr,
    #[serde(skip)]
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataDecl {
    pub name: String,
    pub params: Vec<String>,
    pub constructors: Vec<ConstructorDecl>,
    #[serde(skip)]
    pub pos: Pos,
}

impl DataDecl {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// The type `T a b ...` this declaration's constructors return.
    pub fn self_type(&self) -> TypeExpr {
        TypeExpr::App(self.name.clone(), self.params.iter().map(|p| TypeExpr::Var(p.clone())).collect())
    }

    pub fn constructor(&self, name: &str) -> Option<&ConstructorDecl> {
        self.constructors.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Program {
    pub decls: Vec<DataDecl>,
}

impl Program {
    pub fn decl(&self, name: &str) -> Option<&DataDecl> {
        self.decls.iter().find(|d| d.name == name)
    }

    /// Finds a constructor together with the declaration that owns it.
    pub fn constructor(&self, name: &str) -> Option<(&DataDecl, &ConstructorDecl)> {
        self.decls.iter().find_map(|d| d.constructor(name).map(|c| (d, c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: duplicate {what} `{name}`")]
    Duplicate { pos: Pos, what: &'static str, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KindError {
    #[error("{pos}: `{con}` expects {expected} argument(s) but is applied to {found}")]
    ArityMismatch { pos: Pos, con: String, expected: usize, found: usize },
    #[error("{pos}: type variable `{name}` is not a parameter of `{decl}`")]
    UnboundParameter { pos: Pos, name: String, decl: String },
    #[error("{pos}: unknown type constructor `{name}`")]
    UnknownTypeConstructor { pos: Pos, name: String },
    #[error(
        "{pos}: constructor `{ctor}` takes a function-typed argument `{ty}`; \
         only first-order applications of type constructors and parameters are supported"
    )]
    HigherOrderArgument { pos: Pos, ctor: String, ty: String },
    #[error("{pos}: constructor `{ctor}` must return `{expected}`, found `{found}`")]
    BadResultType { pos: Pos, ctor: String, expected: String, found: String },
    #[error("unknown type `{0}`")]
    UnknownRoot(String),
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Data,
    Where,
    Colon,
    Arrow,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Data => f.write_str("`data`"),
            Tok::Where => f.write_str("`where`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let mut out = Vec::new();
    for (lineno, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line: lineno + 1, col: i + 1 };
            if c.is_whitespace() {
                i += 1;
            } else if c == '-' && chars.get(i + 1) == Some(&'-') {
                break;
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                out.push((Tok::Arrow, pos));
                i += 2;
            } else if c == ':' {
                out.push((Tok::Colon, pos));
                i += 1;
            } else if c == '(' {
                out.push((Tok::LParen, pos));
                i += 1;
            } else if c == ')' {
                out.push((Tok::RParen, pos));
                i += 1;
            } else if is_name_start(c) {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "data" => Tok::Data,
                    "where" => Tok::Where,
                    _ => Tok::Name(word),
                };
                out.push((tok, pos));
            } else {
                return Err(SyntaxError::Syntax { pos, msg: format!("unexpected character `{c}`") });
            }
        }
    }
    let end = Pos { line: src.lines().count().max(1), col: 1 };
    out.push((Tok::Eof, end));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    params: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        self.toks.get(self.at + 1).map(|t| &t.0).unwrap_or(&Tok::Eof)
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {tok}, found {}", self.peek()))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                Ok(n)
            }
            t => self.err(format!("expected {what}, found {t}")),
        }
    }

    fn program(&mut self) -> Result<Program, SyntaxError> {
        let mut decls = Vec::new();
        while *self.peek() != Tok::Eof {
            decls.push(self.decl()?);
        }
        Ok(Program { decls })
    }

    fn decl(&mut self) -> Result<DataDecl, SyntaxError> {
        let pos = self.pos();
        self.expect(Tok::Data)?;
        let name = self.name("a type name")?;
        self.expect(Tok::LParen)?;
        let mut params = Vec::new();
        while let Tok::Name(_) = self.peek() {
            let ppos = self.pos();
            let p = self.name("a parameter")?;
            if params.contains(&p) {
                return Err(SyntaxError::Duplicate { pos: ppos, what: "parameter", name: p });
            }
            params.push(p);
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Where)?;
        self.params = params.clone();
        let mut constructors = Vec::new();
        while let (Tok::Name(_), Tok::Colon) = (self.peek(), self.peek2()) {
            constructors.push(self.ctor()?);
        }
        if constructors.is_empty() {
            return self.err(format!("`{name}` declares no constructors"));
        }
        Ok(DataDecl { name, params, constructors, pos })
    }

    fn ctor(&mut self) -> Result<ConstructorDecl, SyntaxError> {
        let pos = self.pos();
        let name = self.name("a constructor name")?;
        self.expect(Tok::Colon)?;
        let mut chain = vec![self.ty()?];
        while *self.peek() == Tok::Arrow {
            self.bump();
            chain.push(self.ty()?);
        }
        let result = chain.pop().expect("chain is nonempty");
        Ok(ConstructorDecl { name, arg_types: chain, result, pos })
    }

    /// `NAME atom*` or an atom.
    fn ty(&mut self) -> Result<TypeExpr, SyntaxError> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                let mut args = Vec::new();
                while self.starts_atom() {
                    args.push(self.atom()?);
                }
                Ok(self.resolve(n, args))
            }
            Tok::LParen => self.atom(),
            t => self.err(format!("expected a type, found {t}")),
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::LParen => true,
            // A name followed by `:` begins the next constructor.
            Tok::Name(_) => *self.peek2() != Tok::Colon,
            _ => false,
        }
    }

    fn atom(&mut self) -> Result<TypeExpr, SyntaxError> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                Ok(self.resolve(n, Vec::new()))
            }
            Tok::LParen => {
                self.bump();
                let mut t = self.ty()?;
                if *self.peek() == Tok::Arrow {
                    self.bump();
                    let rhs = self.arrow_tail()?;
                    t = TypeExpr::Arrow(Box::new(t), Box::new(rhs));
                }
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            t => self.err(format!("expected a type, found {t}")),
        }
    }

    fn arrow_tail(&mut self) -> Result<TypeExpr, SyntaxError> {
        let t = self.ty()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            Ok(TypeExpr::Arrow(Box::new(t), Box::new(self.arrow_tail()?)))
        } else {
            Ok(t)
        }
    }

    fn resolve(&self, name: String, args: Vec<TypeExpr>) -> TypeExpr {
        if args.is_empty() && self.params.contains(&name) {
            TypeExpr::Var(name)
        } else {
            TypeExpr::App(name, args)
        }
    }
}

/// Parses a `.ndt` program. Names of declarations and constructors must be
/// unique across the whole program.
pub fn parse_program(src: &str) -> Result<Program, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, at: 0, params: Vec::new() };
    let program = p.program()?;
    let mut types = HashSet::new();
    let mut ctors = HashSet::new();
    for d in &program.decls {
        if !types.insert(d.name.clone()) {
            return Err(SyntaxError::Duplicate { pos: d.pos, what: "type", name: d.name.clone() });
        }
        for c in &d.constructors {
            if !ctors.insert(c.name.clone()) {
                return Err(SyntaxError::Duplicate { pos: c.pos, what: "constructor", name: c.name.clone() });
            }
        }
    }
    Ok(program)
}

// ---------------------------------------------------------------------------
// Kind checking

fn check_arg(p: &Program, decl: &DataDecl, ctor: &ConstructorDecl, ty: &TypeExpr) -> Result<(), KindError> {
    match ty {
        TypeExpr::Var(v) => {
            if decl.params.contains(v) {
                Ok(())
            } else {
                Err(KindError::UnboundParameter { pos: ctor.pos, name: v.clone(), decl: decl.name.clone() })
            }
        }
        TypeExpr::App(con, args) => {
            let Some(target) = p.decl(con) else {
                let lower = con.chars().next().is_some_and(|c| c.is_lowercase());
                return Err(if lower && args.is_empty() {
                    KindError::UnboundParameter { pos: ctor.pos, name: con.clone(), decl: decl.name.clone() }
                } else {
                    KindError::UnknownTypeConstructor { pos: ctor.pos, name: con.clone() }
                });
            };
            if target.arity() != args.len() {
                return Err(KindError::ArityMismatch {
                    pos: ctor.pos,
                    con: con.clone(),
                    expected: target.arity(),
                    found: args.len(),
                });
            }
            args.iter().try_for_each(|a| check_arg(p, decl, ctor, a))
        }
        TypeExpr::Arrow(..) => {
            Err(KindError::HigherOrderArgument { pos: ctor.pos, ctor: ctor.name.clone(), ty: ty.to_string() })
        }
    }
}

/// Checks arities, name resolution, first-order arguments and result types.
pub fn kind_check(p: Program) -> Result<Program, KindError> {
    for decl in &p.decls {
        for ctor in &decl.constructors {
            for arg in &ctor.arg_types {
                check_arg(&p, decl, ctor, arg)?;
            }
            // The result must be exactly `T params`; anything else is either an
            // arity slip or an indexed result we do not support.
            if let TypeExpr::App(con, args) = &ctor.result {
                if con == &decl.name && args.len() != decl.arity() {
                    return Err(KindError::ArityMismatch {
                        pos: ctor.pos,
                        con: con.clone(),
                        expected: decl.arity(),
                        found: args.len(),
                    });
                }
            }
            if ctor.result != decl.self_type() {
                return Err(KindError::BadResultType {
                    pos: ctor.pos,
                    ctor: ctor.name.clone(),
                    expected: decl.self_type().to_string(),
                    found: ctor.result.to_string(),
                });
            }
        }
    }
    Ok(p)
}

/// Parses and kind-checks in one step, for callers that only care about the
/// message.
pub fn load_program(src: &str) -> Result<Program, String> {
    let p = parse_program(src).map_err(|e| e.to_string())?;
    kind_check(p).map_err(|e| e.to_string())
}

/// Root first, then every type constructor mentioned transitively in
/// constructor arguments, in first-mention order.
pub fn reachability_closure(p: &Program, root: &str) -> Result<Vec<String>, KindError> {
    if p.decl(root).is_none() {
        return Err(KindError::UnknownRoot(root.to_string()));
    }
    let mut seen = vec![root.to_string()];
    let mut queue = VecDeque::from([root.to_string()]);
    while let Some(name) = queue.pop_front() {
        let Some(decl) = p.decl(&name) else { continue };
        for ctor in &decl.constructors {
            for arg in &ctor.arg_types {
                arg.for_each_con(&mut |c| {
                    if !seen.iter().any(|s| s == c) {
                        seen.push(c.to_string());
                        queue.push_back(c.to_string());
                    }
                });
            }
        }
    }
    Ok(seen)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArgNesting {
    Plain,
    Nested,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructorNesting {
    pub decl: String,
    pub constructor: String,
    pub args: Vec<ArgNesting>,
}

impl ConstructorNesting {
    pub fn is_nested(&self) -> bool {
        self.args.contains(&ArgNesting::Nested)
    }
}

fn mentions_nested(decl: &DataDecl, ty: &TypeExpr) -> bool {
    match ty {
        TypeExpr::Var(_) => false,
        TypeExpr::App(con, args) => {
            (con == &decl.name && *ty != decl.self_type()) || args.iter().any(|a| mentions_nested(decl, a))
        }
        TypeExpr::Arrow(l, r) => mentions_nested(decl, l) || mentions_nested(decl, r),
    }
}

/// Flags each constructor argument of every closure member as plain or
/// nested. An argument is nested when it mentions its own declaration's head
/// at anything other than the declared parameters.
pub fn nestedness_report(p: &Program, root: &str) -> Result<Vec<ConstructorNesting>, KindError> {
    let closure = reachability_closure(p, root)?;
    let mut out = Vec::new();
    for name in &closure {
        let decl = p.decl(name).expect("closure members are declared");
        for ctor in &decl.constructors {
            out.push(ConstructorNesting {
                decl: decl.name.clone(),
                constructor: ctor.name.clone(),
                args: ctor
                    .arg_types
                    .iter()
                    .map(|a| if mentions_nested(decl, a) { ArgNesting::Nested } else { ArgNesting::Plain })
                    .collect(),
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Canonical printing

pub fn format_constructor(c: &ConstructorDecl) -> String {
    let mut s = format!("{} : ", c.name);
    for a in &c.arg_types {
        if matches!(a, TypeExpr::Arrow(..)) {
            s.push_str(&format!("({a}) -> "));
        } else {
            s.push_str(&format!("{a} -> "));
        }
    }
    s.push_str(&c.result.to_string());
    s
}

pub fn format_decl(d: &DataDecl) -> String {
    let mut s = format!("data {} ({}) where\n", d.name, d.params.join(" "));
    for c in &d.constructors {
        s.push_str("  ");
        s.push_str(&format_constructor(c));
        s.push('\n');
    }
    s
}

/// Canonical text of a program; parsing it yields an equal program.
pub fn format_program(p: &Program) -> String {
    p.decls.iter().map(format_decl).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUSH: &str = "data Bush (a) where\n  NilB : Bush a\n  ConsB : a -> Bush (Bush a) -> Bush a\n";

    fn d_program() -> Program {
        load_program(include_str!("../../../programs/d.ndt")).unwrap()
    }

    #[test]
    fn parses_bush() {
        let p = parse_program(BUSH).unwrap();
        assert_eq!(p.decls.len(), 1);
        let d = &p.decls[0];
        assert_eq!(d.name, "Bush");
        assert_eq!(d.params, vec!["a"]);
        assert_eq!(d.constructors[0].name, "NilB");
        assert!(d.constructors[0].arg_types.is_empty());
        assert_eq!(
            d.constructors[1].arg_types,
            vec![TypeExpr::var("a"), TypeExpr::app("Bush", vec![TypeExpr::app("Bush", vec![TypeExpr::var("a")])]),]
        );
    }

    #[test]
    fn empty_input_is_empty_program() {
        assert_eq!(parse_program("").unwrap(), Program::default());
        assert_eq!(parse_program("-- only a comment\n\n").unwrap(), Program::default());
    }

    #[test]
    fn parses_acons_argument() {
        let p = d_program();
        assert_eq!(p.decls.len(), 2);
        let acons = p.decl("D").unwrap().constructor("ACons").unwrap();
        assert_eq!(acons.arg_types[1].to_string(), "D (I (I (D b a))) (D (D b a) (D a b))");
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_program("data Bush (a) where\n  NilB Bush a\n").unwrap_err();
        match err {
            SyntaxError::Syntax { pos, .. } => assert_eq!(pos.line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_names_rejected() {
        let src = "data A () where\n  X : A\ndata B () where\n  X : B\n";
        assert!(matches!(parse_program(src), Err(SyntaxError::Duplicate { what: "constructor", .. })));
        let src = "data A () where\n  X : A\ndata A () where\n  Y : A\n";
        assert!(matches!(parse_program(src), Err(SyntaxError::Duplicate { what: "type", .. })));
        let src = "data A (a a) where\n  X : A a a\n";
        assert!(matches!(parse_program(src), Err(SyntaxError::Duplicate { what: "parameter", .. })));
    }

    #[test]
    fn kind_check_accepts_d() {
        d_program();
    }

    #[test]
    fn arity_mismatch() {
        let p = parse_program("data List (a) where\n  Nil : List a\n  Cons : a -> List a a -> List a\n").unwrap();
        assert!(matches!(kind_check(p), Err(KindError::ArityMismatch { expected: 1, found: 2, .. })));
    }

    #[test]
    fn function_argument_rejected() {
        let p = parse_program("data T (a) where\n  C : (a -> a) -> T a\n").unwrap();
        let err = kind_check(p).unwrap_err();
        assert!(matches!(err, KindError::HigherOrderArgument { .. }));
        assert!(err.to_string().contains("first-order"));
    }

    #[test]
    fn unbound_and_unknown() {
        let p = parse_program("data T (a) where\n  C : b -> T a\n").unwrap();
        assert!(matches!(kind_check(p), Err(KindError::UnboundParameter { .. })));
        let p = parse_program("data T (a) where\n  C : Foo a -> T a\n").unwrap();
        assert!(matches!(kind_check(p), Err(KindError::UnknownTypeConstructor { .. })));
        let p = parse_program("data T (a) where\n  C : T (T a)\n").unwrap();
        assert!(matches!(kind_check(p), Err(KindError::BadResultType { .. })));
    }

    #[test]
    fn closures() {
        assert_eq!(reachability_closure(&d_program(), "D").unwrap(), vec!["D", "I"]);
        assert_eq!(reachability_closure(&d_program(), "I").unwrap(), vec!["I"]);
        let bush = load_program(BUSH).unwrap();
        assert_eq!(reachability_closure(&bush, "Bush").unwrap(), vec!["Bush"]);
        let term = load_program(include_str!("../../../programs/term.ndt")).unwrap();
        assert_eq!(reachability_closure(&term, "Term").unwrap(), vec!["Term", "Incr"]);
        assert!(matches!(reachability_closure(&term, "Nope"), Err(KindError::UnknownRoot(_))));
    }

    #[test]
    fn nestedness() {
        let bush = load_program(BUSH).unwrap();
        let r = nestedness_report(&bush, "Bush").unwrap();
        assert_eq!(r[1].args, vec![ArgNesting::Plain, ArgNesting::Nested]);

        let list = load_program(include_str!("../../../programs/list.ndt")).unwrap();
        let r = nestedness_report(&list, "List").unwrap();
        let cons = r.iter().find(|c| c.constructor == "Cons").unwrap();
        assert_eq!(cons.args, vec![ArgNesting::Plain, ArgNesting::Plain]);

        let terme = load_program(include_str!("../../../programs/terme.ndt")).unwrap();
        let r = nestedness_report(&terme, "TermE").unwrap();
        let lam = r.iter().find(|c| c.constructor == "LamE").unwrap();
        assert_eq!(lam.args, vec![ArgNesting::Nested]);
    }

    #[test]
    fn canonical_printing() {
        let p = load_program(BUSH).unwrap();
        let ctor = &p.decls[0].constructors[1];
        assert_eq!(format_constructor(ctor), "ConsB : a -> Bush (Bush a) -> Bush a");
        assert_eq!(format_program(&p), BUSH);
        let d = d_program();
        let text = format_program(&d);
        assert_eq!(parse_program(&text).unwrap(), d);
        assert_eq!(format_program(&parse_program(&text).unwrap()), text);
    }
}
