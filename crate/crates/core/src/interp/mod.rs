//! Evaluation, type checking and enumeration of values.

mod enumerate;
mod eval;
mod trace;
mod typing;
mod value;

pub use enumerate::{enumerate_values, Enumerator};
pub use eval::{
    eval_fold, eval_map, eval_templates_sem, fold_with, map_by_type, Algebra, Arg, CallFn, CaseArgs, CaseImpl,
    ClosureAlgebra, EvalError, FoldAlgebra, LeafFn, NativeFn, Sem, SemFn,
};
pub use trace::{descent_audit, is_recording, record, AuditReport, EvalTrace, TraceEntry};
pub use typing::{check_against_type, check_value, expand_type, CarrierSet, Carriers, TypeError};
pub use value::{is_strict_subterm, parse_value, value_eq, value_size, Ground, LiteralError, Value};

#[cfg(test)]
mod tests;
