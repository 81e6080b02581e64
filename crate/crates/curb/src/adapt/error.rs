//! Adaptation failures.

use thiserror::Error;

use crate::lang::LangError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AdaptError {
    /// The drawn operator has no target in this program (e.g.
    /// `DeleteUnusedLet` with no unused let). Counts as one retry.
    #[error("the drawn mutation operator has no applicable target")]
    NoApplicableOperator,

    /// Every candidate over the retry budget failed validation.
    #[error("adaptation failed: {retries} consecutive candidates were invalid")]
    AdaptationFailed { retries: usize },

    #[error("invalid mutation policy: {0}")]
    InvalidPolicy(&'static str),

    /// A rule source or descriptor fragment does not compile.
    #[error(transparent)]
    Lang(#[from] LangError),

    #[error(transparent)]
    Model(#[from] crate::metamodel::ModelError),
}
