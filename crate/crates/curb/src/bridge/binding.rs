//! Input bindings for one rule execution.

use crate::metamodel::StateValue;

/// Everything a rule may read: the entity's own state and the states of its
/// milieu at the current iteration, plus the derived milieu sum and count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingSet {
    entity_state: StateValue,
    milieu_states: Vec<StateValue>,
    milieu_sum: i64,
}

impl BindingSet {
    /// The derived values are fixed here so they are always consistent with
    /// the milieu states (booleans count as 0/1 in the sum).
    pub fn new(entity_state: StateValue, milieu_states: Vec<StateValue>) -> Self {
        let milieu_sum = milieu_states.iter().map(StateValue::as_numeric).sum();
        BindingSet {
            entity_state,
            milieu_states,
            milieu_sum,
        }
    }

    pub fn entity_state(&self) -> StateValue {
        self.entity_state
    }

    pub fn milieu_states(&self) -> &[StateValue] {
        &self.milieu_states
    }

    pub fn milieu_sum(&self) -> i64 {
        self.milieu_sum
    }

    pub fn milieu_count(&self) -> usize {
        self.milieu_states.len()
    }
}
