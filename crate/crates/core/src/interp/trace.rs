//! Recording of recursive fold invocations and the structural descent audit.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use super::value::{is_strict_subterm, Value};
use crate::derive::IndexExpr;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub fold: String,
    pub subject: Value,
    pub index: IndexExpr,
    pub parent: Value,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalTrace {
    pub entries: Vec<TraceEntry>,
}

impl EvalTrace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

thread_local! {
    static SINK: RefCell<Option<Vec<TraceEntry>>> = const { RefCell::new(None) };
}

/// Runs `f` with recording enabled on this thread and returns the trace of
/// every recursive fold call it made.
pub fn record<R>(f: impl FnOnce() -> R) -> (R, EvalTrace) {
    let saved = SINK.with(|s| s.borrow_mut().replace(Vec::new()));
    let out = f();
    let entries = SINK.with(|s| std::mem::replace(&mut *s.borrow_mut(), saved)).unwrap_or_default();
    if !entries.is_empty() {
        // a surrounding recording also sees the nested calls
        SINK.with(|s| {
            if let Some(outer) = s.borrow_mut().as_mut() {
                outer.extend(entries.iter().cloned());
            }
        });
    }
    (out, EvalTrace { entries })
}

pub fn is_recording() -> bool {
    SINK.with(|s| s.borrow().is_some())
}

pub(crate) fn note(fold: &str, subject: &Value, index: &IndexExpr, parent: &Value) {
    SINK.with(|s| {
        if let Some(v) = s.borrow_mut().as_mut() {
            v.push(TraceEntry {
                fold: fold.to_string(),
                subject: subject.clone(),
                index: index.clone(),
                parent: parent.clone(),
            });
        }
    });
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub calls: usize,
    pub violations: Vec<TraceEntry>,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: AuditReport) {
        self.calls += other.calls;
        self.violations.extend(other.violations);
    }
}

/// Every recorded subject must be a strict subtree of its parent.
pub fn descent_audit(t: &EvalTrace) -> AuditReport {
    AuditReport {
        calls: t.entries.len(),
        violations: t.entries.iter().filter(|e| !is_strict_subterm(&e.subject, &e.parent)).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_trace_is_ok() {
        assert!(descent_audit(&EvalTrace::default()).ok());
    }

    #[test]
    fn flags_non_descent() {
        let v = Value::con("Succ", vec![Value::leaf("Zero")]);
        let ((), t) = record(|| {
            note("f", &Value::leaf("Zero"), &IndexExpr::nat(0), &v);
            note("f", &v, &IndexExpr::nat(0), &v);
        });
        let r = descent_audit(&t);
        assert_eq!(r.calls, 2);
        assert_eq!(r.violations.len(), 1);
        assert!(!is_recording());
    }

    #[test]
    fn nested_recordings_propagate() {
        let v = Value::con("Succ", vec![Value::leaf("Zero")]);
        let ((_, inner), outer) = record(|| record(|| note("f", &Value::leaf("Zero"), &IndexExpr::nat(0), &v)));
        assert_eq!(inner.len(), 1);
        assert_eq!(outer.len(), 1);
    }
}
