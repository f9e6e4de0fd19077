//! Dependently typed folds for nested data types.

pub mod check;
pub mod corpus;
pub mod derive;
pub mod emit;
pub mod interp;
pub mod syntax;

pub use derive::{
    artifacts_for, derive_all, derive_fold_spec, derive_hofold, derive_index_type, derive_interpretation, DeriveError,
    DerivedArtifacts, Family, FoldCase, FoldSpec, HOFoldSpec, IndexExpr, IndexTypeDecl, InterpretationFn,
};
pub use emit::{emit_agda, emit_json, load_json, EmitError, EmitOptions, Part};
pub use interp::{Algebra, Carriers, EvalError, TypeError, Value};
pub use syntax::{kind_check, load_program, parse_program, DataDecl, KindError, Program, SyntaxError, TypeExpr};
