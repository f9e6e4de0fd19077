//! Exhaustive generation of small well-typed values.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::typing::{expand_type, CarrierSet, Carriers, TypeError};
use super::value::Value;
use crate::derive::{ArgKind, DeriveError, Family, IndexExpr, RawType};
use crate::syntax::{Program, TypeExpr};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    Ty(TypeExpr),
    Rep(IndexExpr),
}

/// Memoized exact-size generator for one family and carrier assignment.
pub struct Enumerator<'a> {
    prog: &'a Program,
    family: &'a Family,
    carriers: &'a Carriers,
    memo: HashMap<(Key, usize), Arc<Vec<Value>>>,
}

impl<'a> Enumerator<'a> {
    pub fn new(prog: &'a Program, family: &'a Family, carriers: &'a Carriers) -> Self {
        Enumerator { prog, family, carriers, memo: HashMap::new() }
    }

    fn root_key(&self, index: &IndexExpr) -> Result<Key, TypeError> {
        match self.family {
            Family::Indexed(_) => Ok(Key::Rep(index.clone())),
            Family::Interpreted { .. } => Ok(Key::Ty(expand_type(self.family, index)?)),
        }
    }

    /// All values at `index` with exactly `size` nodes, sorted.
    pub fn exact(&mut self, index: &IndexExpr, size: usize) -> Result<Arc<Vec<Value>>, TypeError> {
        let key = self.root_key(index)?;
        self.gen(&key, size)
    }

    /// All values at `index` of size at most `bound`, by size then order.
    pub fn values(&mut self, index: &IndexExpr, bound: usize) -> Result<Vec<Value>, TypeError> {
        let key = self.root_key(index)?;
        let mut out = Vec::new();
        for n in 1..=bound {
            out.extend(self.gen(&key, n)?.iter().cloned());
        }
        Ok(out)
    }

    fn gen(&mut self, key: &Key, n: usize) -> Result<Arc<Vec<Value>>, TypeError> {
        if let Some(v) = self.memo.get(&(key.clone(), n)) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        match key {
            Key::Ty(TypeExpr::Var(p)) => {
                if n == 1 {
                    let set = self.carriers.get(p).ok_or_else(|| TypeError::NoCarrier(p.clone()))?;
                    match set {
                        CarrierSet::Finite { values, .. } => out.extend(values.iter().cloned().map(Value::Ground)),
                        _ => return Err(TypeError::NoCarrier(format!("{p} (unbounded carrier)"))),
                    }
                }
            }
            Key::Ty(TypeExpr::App(t, targs)) => {
                let decl = self.prog.decl(t).ok_or_else(|| DeriveError::OutOfClosure(t.clone()))?;
                let env: BTreeMap<String, TypeExpr> = decl.params.iter().cloned().zip(targs.iter().cloned()).collect();
                for ctor in &decl.constructors {
                    let keys: Vec<Key> = ctor.arg_types.iter().map(|a| Key::Ty(a.substitute(&env))).collect();
                    for kids in self.products(&keys, n - 1)? {
                        out.push(Value::Con(ctor.name.clone(), kids));
                    }
                }
            }
            Key::Ty(TypeExpr::Arrow(..)) => {}
            Key::Rep(index) => {
                let rep = match self.family {
                    Family::Indexed(rep) => rep.clone(),
                    Family::Interpreted { .. } => unreachable!("representation keys only arise for indexed families"),
                };
                for ctor in &rep.ctors {
                    let mut env = BTreeMap::new();
                    if !ctor.index.match_closed(index, &mut env) {
                        continue;
                    }
                    let keys = ctor
                        .args
                        .iter()
                        .map(|a| {
                            Ok(match &a.kind {
                                ArgKind::Recursive(i) => Key::Rep(i.substitute(&env)),
                                ArgKind::Raw(RawType::Param(p)) => Key::Ty(TypeExpr::Var(p.clone())),
                                ArgKind::Raw(RawType::Interp(i)) => {
                                    Key::Ty(rep.source_interp.interpret_symbolic(&i.substitute(&env))?)
                                }
                            })
                        })
                        .collect::<Result<Vec<_>, TypeError>>()?;
                    for kids in self.products(&keys, n - 1)? {
                        out.push(Value::Con(ctor.name.clone(), kids));
                    }
                }
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.memo.insert((key.clone(), n), out.clone());
        Ok(out)
    }

    fn products(&mut self, keys: &[Key], n: usize) -> Result<Vec<Vec<Value>>, TypeError> {
        let Some((first, rest)) = keys.split_first() else {
            return Ok(if n == 0 { vec![Vec::new()] } else { Vec::new() });
        };
        let mut out = Vec::new();
        if n < keys.len() {
            return Ok(out);
        }
        for s in 1..=n - rest.len() {
            let heads = self.gen(first, s)?;
            if heads.is_empty() {
                continue;
            }
            let tails = self.products(rest, n - s)?;
            for h in heads.iter() {
                for t in &tails {
                    let mut row = Vec::with_capacity(keys.len());
                    row.push(h.clone());
                    row.extend(t.iter().cloned());
                    out.push(row);
                }
            }
        }
        Ok(out)
    }
}

/// Exactly the values at `index` of size at most `bound` that type-check,
/// each once, size-ascending then in value order.
pub fn enumerate_values(
    prog: &Program,
    family: &Family,
    index: &IndexExpr,
    carriers: &Carriers,
    bound: usize,
) -> Result<Vec<Value>, TypeError> {
    Enumerator::new(prog, family, carriers).values(index, bound)
}
