//! Errors from the code↔data transitions.

use thiserror::Error;

use crate::lang::{LangError, Position};
use crate::metamodel::StateDomain;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BridgeError {
    /// Front-end failure while re-reading rule text.
    #[error(transparent)]
    Lang(#[from] LangError),

    /// `milieu [ expr ]` with a non-literal index cannot be closed
    /// textually in faithful mode.
    #[error("milieu index at {position} is not a constant; faithful mode cannot close it")]
    NonConstantMilieuIndex { position: Position },

    #[error("milieu index {index} out of range for milieu of {milieu_count} entries")]
    MilieuIndexOutOfRange { index: i64, milieu_count: usize },

    /// A state or milieu reference survived into a supposedly closed
    /// source.
    #[error("unresolved reference `{token}` in closed rule source")]
    UnresolvedReference { token: String },

    /// Program and bindings disagree on domain or milieu size.
    #[error("bindings do not match the program: {detail}")]
    BindingMismatch { detail: String },

    #[error("rule runtime error: {0}")]
    Runtime(#[from] RuleRuntimeError),

    /// Execution finished without any emit. Validation makes this
    /// unreachable for compiled programs; the variant exists as defense in
    /// depth.
    #[error("execution finished without emitting a value")]
    NoEmitExecuted,

    #[error("cannot parse captured value `{raw}` for domain {domain}")]
    UnparsableCapture { raw: String, domain: StateDomain },

    #[error("emitted value `{raw}` lies outside the domain {domain}")]
    EmittedValueOutOfDomain { raw: String, domain: StateDomain },
}

/// Dynamic failures inside rule evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleRuntimeError {
    #[error("division or modulo by zero")]
    DivisionByZero,

    #[error("negative milieu index {index}")]
    NegativeMilieuIndex { index: i64 },

    #[error("arithmetic overflow")]
    ArithmeticOverflow,

    /// The node-visit budget was exceeded. The grammar guarantees
    /// termination, so this can only fire on an evaluator bug; it is kept
    /// as defense in depth.
    #[error("evaluation fuel exhausted (budget {budget})")]
    FuelExhausted { budget: u64 },

    /// An evaluator invariant failed (wrong runtime type, multiple
    /// captures). Unreachable for validated programs.
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
