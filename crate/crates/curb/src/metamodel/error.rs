//! Errors raised while concretizing, actualizing, and running systems.

use thiserror::Error;

use super::domain::{StateDomain, StateValue};
use crate::bridge::BridgeError;
use crate::lang::LangError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid integer domain: lo {lo} > hi {hi}")]
    InvalidDomain { lo: i64, hi: i64 },

    #[error("entity count must be positive")]
    ZeroEntities,

    #[error("initial state {value} at index {index} lies outside the domain {domain}")]
    DomainMismatch {
        index: usize,
        value: StateValue,
        domain: StateDomain,
    },

    #[error("declared state-domain kind does not match the bound domain {domain}")]
    DomainKindMismatch { domain: StateDomain },

    #[error("{what}: expected {expected}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("rule sources must be non-empty")]
    EmptyRuleSources,

    #[error("grid {width}x{height} does not cover {entity_count} entities")]
    GridSizeMismatch {
        width: usize,
        height: usize,
        entity_count: usize,
    },

    #[error("explicit adjacency of entity {entity} references index {index} (only {entity_count} entities exist)")]
    ExplicitIndexOutOfRange {
        entity: usize,
        index: usize,
        entity_count: usize,
    },

    #[error(transparent)]
    Lang(#[from] LangError),

    /// A rule failed while updating one entity during one iteration.
    #[error("entity {entity} at iteration {iteration}: {source}")]
    Step {
        entity: usize,
        iteration: u64,
        source: BridgeError,
    },
}
