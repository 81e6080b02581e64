//! State domains and state values.

use std::fmt;

use super::error::ModelError;

/// The kind of a state domain, declared in the virtual regime before any
/// bounds are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateDomainKind {
    Boolean,
    IntegerRange,
}

/// A finite, enumerable set of possible entity states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateDomain {
    Boolean,
    /// Inclusive integer range; `lo <= hi` always holds.
    IntegerRange { lo: i64, hi: i64 },
}

impl StateDomain {
    /// Builds an inclusive integer range, rejecting `lo > hi`.
    pub fn integer_range(lo: i64, hi: i64) -> Result<Self, ModelError> {
        if lo > hi {
            return Err(ModelError::InvalidDomain { lo, hi });
        }
        Ok(StateDomain::IntegerRange { lo, hi })
    }

    pub fn kind(&self) -> StateDomainKind {
        match self {
            StateDomain::Boolean => StateDomainKind::Boolean,
            StateDomain::IntegerRange { .. } => StateDomainKind::IntegerRange,
        }
    }

    /// True when `value` is a member of this domain.
    pub fn contains(&self, value: &StateValue) -> bool {
        match (self, value) {
            (StateDomain::Boolean, StateValue::Bool(_)) => true,
            (StateDomain::IntegerRange { lo, hi }, StateValue::Int(v)) => lo <= v && v <= hi,
            _ => false,
        }
    }

    /// Enumerates every member of the domain in ascending order.
    pub fn values(&self) -> Vec<StateValue> {
        match self {
            StateDomain::Boolean => vec![StateValue::Bool(false), StateValue::Bool(true)],
            StateDomain::IntegerRange { lo, hi } => {
                (*lo..=*hi).map(StateValue::Int).collect()
            }
        }
    }

    /// The lowest member, used as the background for impulse initial
    /// conditions.
    pub fn lowest(&self) -> StateValue {
        match self {
            StateDomain::Boolean => StateValue::Bool(false),
            StateDomain::IntegerRange { lo, .. } => StateValue::Int(*lo),
        }
    }

    /// The member one step above the lowest (or the lowest itself for a
    /// single-valued domain): the "on" value of an impulse.
    pub fn impulse_value(&self) -> StateValue {
        match self {
            StateDomain::Boolean => StateValue::Bool(true),
            StateDomain::IntegerRange { lo, hi } => StateValue::Int((*lo + 1).min(*hi)),
        }
    }
}

impl fmt::Display for StateDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateDomain::Boolean => write!(f, "bool"),
            StateDomain::IntegerRange { lo, hi } => write!(f, "int {lo} {hi}"),
        }
    }
}

/// A tagged scalar entity state: the only data rules may read or emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateValue {
    Bool(bool),
    Int(i64),
}

impl StateValue {
    /// Numeric view with booleans as 0/1; used for milieu sums and trace
    /// serialization.
    pub fn as_numeric(&self) -> i64 {
        match self {
            StateValue::Bool(false) => 0,
            StateValue::Bool(true) => 1,
            StateValue::Int(v) => *v,
        }
    }

    /// The capture wire form: `true`/`false` for booleans, a decimal
    /// integer otherwise.
    pub fn wire_text(&self) -> String {
        match self {
            StateValue::Bool(v) => v.to_string(),
            StateValue::Int(v) => v.to_string(),
        }
    }
}

impl fmt::Display for StateValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.wire_text())
    }
}
