//! Derivation of index types, folds and their companions from declarations.

mod fold;
mod hofold;
mod index;
mod rep;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fold::{
    derive_fold_spec, derive_induction_spec, derive_map_spec, induction_name, map_name, render_interp_app, ArgKind,
    ArgSpec, Equation, EquationArg, Family, FoldCase, FoldKind, FoldSpec, InductionCase, InductionSpec, MapAction,
    MapSpec, RawType, SignatureStyle, Template, ValuePattern,
};
pub use hofold::{abstract_family, derive_hofold, root_index, HOArg, HOFoldSpec};
pub use index::{
    derive_index_type, derive_interpretation, type_to_index, IndexCtor, IndexExpr, IndexSource, IndexTypeDecl,
    InterpretationFn, InterpretationRule, TypeTemplate,
};
pub use rep::{
    derive_church, derive_conversions, derive_indexed_rep, indexed_rep_of, ChurchEncodingDecl, Conversions,
    IndexedCtor, IndexedRep, IndexedRepDecl,
};

use crate::syntax::{KindError, Program};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("index contains the free variable `{0}`")]
    FreeIndexVariable(String),
    #[error("`{0}` is outside the reachability closure")]
    OutOfClosure(String),
    #[error("parameter `{0}` has no index assignment")]
    UnboundParameter(String),
    #[error("unknown index constructor `{0}`")]
    UnknownIndexConstructor(String),
    #[error("`{0}` is an indexed representation, not an interpretation")]
    NotInterpreted(String),
    #[error("invalid fold spec: {0}")]
    InvalidSpec(String),
    #[error("cannot specialize to a higher-order fold: {0}")]
    NotProper(String),
    #[error(transparent)]
    Kind(#[from] KindError),
}

/// Everything derived for one root type, in a stable field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedArtifacts {
    pub index_type: IndexTypeDecl,
    pub interpretation: InterpretationFn,
    pub fold_spec: FoldSpec,
    pub induction_spec: InductionSpec,
    pub hofold: HOFoldSpec,
    pub indexed_rep: IndexedRep,
    pub church: ChurchEncodingDecl,
}

pub fn derive_all(p: &Program, root: &str) -> Result<DerivedArtifacts, DeriveError> {
    let fold_spec = derive_fold_spec(p, root)?;
    artifacts_for(p, fold_spec)
}

/// Companions of an arbitrary (possibly hand-written) fold spec.
pub fn artifacts_for(p: &Program, fold_spec: FoldSpec) -> Result<DerivedArtifacts, DeriveError> {
    fold_spec.validate()?;
    let interpretation = fold_spec.family.interpretation().clone();
    Ok(DerivedArtifacts {
        index_type: fold_spec.family.index_type().clone(),
        interpretation,
        induction_spec: derive_induction_spec(&fold_spec),
        hofold: derive_hofold(p, &fold_spec)?,
        indexed_rep: indexed_rep_of(&fold_spec)?,
        church: derive_church(&fold_spec),
        fold_spec,
    })
}
