//! Exhaustive checking of the fold laws and program equations on every
//! small value, with counterexamples and a termination audit.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derive::{Family, IndexExpr};
use crate::interp::{descent_audit, enumerate_values, record, AuditReport, Carriers, EvalError, TypeError, Value};
use crate::syntax::Program;

mod properties;

pub use properties::{char_leaf_fns, mutation_property, nat_leaf_fns, properties, property, Property};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Fast,
    Default,
    Thorough,
}

impl Profile {
    /// From `NESTFOLD_PROFILE`; unset means `Default`.
    pub fn from_env() -> Result<Profile, CheckError> {
        match std::env::var("NESTFOLD_PROFILE") {
            Ok(s) => s.parse(),
            Err(_) => Ok(Profile::Default),
        }
    }
}

impl std::str::FromStr for Profile {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Profile::Fast),
            "default" | "" => Ok(Profile::Default),
            "thorough" => Ok(Profile::Thorough),
            other => Err(CheckError::Precondition(format!("unknown profile `{other}`"))),
        }
    }
}

/// Enumeration bounds. Sizes count nodes, grounds included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub bush_index: usize,
    pub bush_size: usize,
    pub term_index: usize,
    pub term_size: usize,
    /// Depth of `IndexD` trees.
    pub d_depth: usize,
    pub d_size: usize,
    /// Terms in the commutation lemmas.
    pub lemma_size: usize,
    /// The second term of two-term properties, e.g. `s` in `subst n s t`.
    pub pair_size: usize,
    /// Naturals below this bound.
    pub nat_carrier: u64,
    pub alphabet: Vec<char>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            bush_index: 3,
            bush_size: 7,
            term_index: 3,
            term_size: 8,
            d_depth: 3,
            d_size: 7,
            lemma_size: 6,
            pair_size: 3,
            nat_carrier: 3,
            alphabet: vec!['W', 'c', 'x', 'y'],
        }
    }
}

impl Bounds {
    pub fn for_profile(p: Profile) -> Bounds {
        let d = Bounds::default();
        match p {
            Profile::Default => d,
            Profile::Fast => Bounds {
                bush_index: d.bush_index.div_ceil(2),
                bush_size: d.bush_size.div_ceil(2),
                term_index: d.term_index.div_ceil(2),
                term_size: d.term_size / 2,
                d_depth: d.d_depth.div_ceil(2),
                d_size: d.d_size.div_ceil(2),
                lemma_size: d.lemma_size / 2,
                pair_size: d.pair_size.div_ceil(2),
                nat_carrier: 2,
                alphabet: vec!['W', 'c'],
            },
            Profile::Thorough => {
                Bounds { bush_index: 4, bush_size: 9, term_size: 9, d_size: 8, lemma_size: 7, pair_size: 4, ..d }
            }
        }
    }

    /// Caps every value size bound at `k`.
    pub fn with_max_size(mut self, k: usize) -> Bounds {
        self.bush_size = k;
        self.term_size = k;
        self.d_size = k;
        self.lemma_size = k;
        self.pair_size = self.pair_size.min(k);
        self
    }

    /// Caps every index bound at `n`.
    pub fn with_max_index(mut self, n: usize) -> Bounds {
        self.bush_index = n;
        self.term_index = n;
        self.d_depth = n.max(1);
        self
    }

    pub fn validate(&self) -> Result<(), CheckError> {
        let sizes = [self.bush_size, self.term_size, self.d_size, self.lemma_size, self.pair_size];
        if sizes.contains(&0) {
            return Err(CheckError::Precondition("size bounds must be at least 1".into()));
        }
        if self.nat_carrier == 0 || self.alphabet.is_empty() {
            return Err(CheckError::Precondition("carriers must be nonempty".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("enumeration failed: {0}")]
    Enumeration(#[from] TypeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: String,
    pub inputs: Vec<String>,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property: String,
    pub cases: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub audit: AuditReport,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One human-readable line.
    pub fn summary(&self) -> String {
        match (&self.status, &self.counterexample) {
            (Status::Pass, _) => format!("PASS {} ({} cases, {} ms)", self.property, self.cases, self.elapsed_ms),
            (Status::Fail, Some(c)) => format!(
                "FAIL {} after {} cases at {}: inputs [{}] give {} vs {}",
                self.property,
                self.cases,
                c.index,
                c.inputs.join(", "),
                c.left,
                c.right
            ),
            (Status::Fail, None) => format!("FAIL {}", self.property),
        }
    }
}

/// Stops a property run early.
pub enum Halt {
    Failed,
    Error(CheckError),
}

impl From<CheckError> for Halt {
    fn from(e: CheckError) -> Self {
        Halt::Error(e)
    }
}

impl From<TypeError> for Halt {
    fn from(e: TypeError) -> Self {
        Halt::Error(e.into())
    }
}

pub type Flow = Result<(), Halt>;

/// State of one property run. Cases are visited in enumeration order and
/// the first failure stops the run, so it is minimal at its index.
pub struct Ctx {
    cases: usize,
    failure: Option<Counterexample>,
    audit: AuditReport,
}

fn show(r: &Result<Value, EvalError>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

impl Ctx {
    fn new() -> Self {
        Ctx { cases: 0, failure: None, audit: AuditReport::default() }
    }

    /// Evaluates both sides with recording on and compares them.
    pub fn case(
        &mut self,
        index: &dyn std::fmt::Display,
        inputs: &[&Value],
        lhs: impl FnOnce() -> Result<Value, EvalError>,
        rhs: impl FnOnce() -> Result<Value, EvalError>,
    ) -> Flow {
        self.cases += 1;
        let ((l, r), trace) = record(|| (lhs(), rhs()));
        self.audit.merge(descent_audit(&trace));
        match (&l, &r) {
            (Ok(a), Ok(b)) if a == b => Ok(()),
            _ => {
                self.failure = Some(Counterexample {
                    index: index.to_string(),
                    inputs: inputs.iter().map(|v| v.to_string()).collect(),
                    left: show(&l),
                    right: show(&r),
                });
                Err(Halt::Failed)
            }
        }
    }
}

/// Every value of the family at `index` up to `bound`, in enumeration order.
pub fn domain(
    prog: &Program,
    family: &Family,
    index: &IndexExpr,
    carriers: &Carriers,
    bound: usize,
) -> Result<Vec<Value>, Halt> {
    Ok(enumerate_values(prog, family, index, carriers, bound)?)
}

fn execute(name: &str, body: impl FnOnce(&mut Ctx) -> Flow) -> Result<CheckReport, CheckError> {
    let start = Instant::now();
    let mut ctx = Ctx::new();
    let status = match body(&mut ctx) {
        Ok(()) => Status::Pass,
        Err(Halt::Failed) => Status::Fail,
        Err(Halt::Error(e)) => return Err(e),
    };
    Ok(CheckReport {
        property: name.to_string(),
        cases: ctx.cases,
        status,
        counterexample: ctx.failure,
        audit: ctx.audit,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run(p: &Property, bounds: &Bounds) -> Result<CheckReport, CheckError> {
    bounds.validate()?;
    execute(p.name, |ctx| (p.body)(bounds, ctx))
}

pub fn run_property(name: &str, bounds: &Bounds) -> Result<CheckReport, CheckError> {
    let p = property(name).ok_or_else(|| CheckError::UnknownProperty(name.to_string()))?;
    run(p, bounds)
}

/// Every registered property, in parallel, reports in registry order.
pub fn run_suite(bounds: &Bounds) -> Result<Vec<CheckReport>, CheckError> {
    bounds.validate()?;
    properties().par_iter().map(|p| run(p, bounds)).collect()
}

/// Descent audit over every evaluation the suite performs.
pub fn audit_termination(bounds: &Bounds) -> Result<AuditReport, CheckError> {
    let mut total = AuditReport::default();
    for r in run_suite(bounds)? {
        total.merge(r.audit);
    }
    Ok(total)
}

#[cfg(test)]
mod tests;
