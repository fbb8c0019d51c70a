//! Engine-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("{0} is not 0 or a small prime")]
    BadField(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(crate::field::FieldSpec, crate::field::FieldSpec),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no solution: right-hand side outside the column space")]
    NoSolution,
    #[error("relation is not homogeneous: {0}")]
    InhomogeneousRelation(String),
    #[error("cutoff {cutoff} too small: {reason}")]
    CutoffTooSmall { cutoff: usize, reason: String },
    #[error("algebra is not local: augmentation ideal is not nilpotent")]
    NotLocal,
    #[error("augmentation ideal of a coproduct factor is not nilpotent")]
    NotNilpotent,
    #[error("subspace is not a two-sided ideal")]
    NotIdeal,
    #[error("resolution is not small: {0}")]
    NotSmall(String),
    #[error("algebra axioms fail: {0}")]
    AxiomFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
