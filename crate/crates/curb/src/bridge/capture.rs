//! The capture channel: how emitted values travel from data back to code.
//!
//! Rules never hand values to the host directly. An emit writes the value's
//! text form into a capture channel (the stand-in for a redirected output
//! stream); the host then parses that single line of text back into a
//! domain-checked state value.

use crate::metamodel::{StateDomain, StateValue};

use super::error::BridgeError;

/// Buffer for raw emitted values in text form. A successful execution
/// leaves exactly one value here.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CaptureChannel {
    buffer: Vec<String>,
}

impl CaptureChannel {
    pub fn new() -> Self {
        CaptureChannel::default()
    }

    pub fn push(&mut self, raw: String) {
        self.buffer.push(raw);
    }

    pub fn values(&self) -> &[String] {
        &self.buffer
    }

    /// The single captured value, or `NoEmitExecuted` when the buffer is
    /// empty. More than one value cannot occur because the first emit ends
    /// execution; it is still rejected here rather than silently picked
    /// from.
    pub fn single(&self) -> Result<&str, BridgeError> {
        use super::error::RuleRuntimeError;
        match self.buffer.as_slice() {
            [one] => Ok(one),
            [] => Err(BridgeError::NoEmitExecuted),
            _ => Err(BridgeError::Runtime(RuleRuntimeError::Internal(
                "multiple values captured from one execution",
            ))),
        }
    }
}

/// Parses a captured raw value for a domain: `true`/`false` for boolean
/// domains, a decimal integer (optional leading minus) for integer ranges.
pub fn capture_parse(raw: &str, domain: &StateDomain) -> Result<StateValue, BridgeError> {
    let value = match domain {
        StateDomain::Boolean => match raw {
            "true" => StateValue::Bool(true),
            "false" => StateValue::Bool(false),
            _ => {
                return Err(BridgeError::UnparsableCapture {
                    raw: raw.to_owned(),
                    domain: domain.clone(),
                })
            }
        },
        StateDomain::IntegerRange { .. } => match raw.parse::<i64>() {
            Ok(v) => StateValue::Int(v),
            Err(_) => {
                return Err(BridgeError::UnparsableCapture {
                    raw: raw.to_owned(),
                    domain: domain.clone(),
                })
            }
        },
    };
    if !domain.contains(&value) {
        return Err(BridgeError::EmittedValueOutOfDomain {
            raw: raw.to_owned(),
            domain: domain.clone(),
        });
    }
    Ok(value)
}
