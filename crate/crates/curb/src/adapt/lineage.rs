//! Append-only history of rule versions.

use std::fmt;

use crate::lang::RuleSource;

use super::mutate::MutationDescriptor;
use super::policy::MutationOperatorKind;

/// 64-bit FNV-1a over the canonical rendered source. Stable across
/// platforms and versions, which keeps lineage files reproducible.
pub fn source_digest(source: &RuleSource) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut hash = OFFSET;
    for byte in source.as_str().as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(PRIME);
    }
    hash
}

/// Which rule slot an adaptation rewrote.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdaptedTarget {
    Shared,
    Entity(usize),
}

impl fmt::Display for AdaptedTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdaptedTarget::Shared => f.write_str("shared"),
            AdaptedTarget::Entity(index) => write!(f, "{index}"),
        }
    }
}

/// One adaptation event.
#[derive(Debug, Clone, PartialEq)]
pub struct LineageRecord {
    pub generation: u64,
    pub parent_hash: u64,
    pub child_hash: u64,
    pub operator: MutationOperatorKind,
    pub target: AdaptedTarget,
    pub seed: u64,
    /// The iteration at which the child rules took effect, when the event
    /// happened inside a run.
    pub iteration: Option<u64>,
    pub descriptor: MutationDescriptor,
}

impl LineageRecord {
    /// The line format of lineage logs. The optional trailing `iter=` field
    /// is appended by run harnesses that know the iteration.
    pub fn log_line(&self) -> String {
        let mut line = format!(
            "gen={} parent={:016x} child={:016x} op={} entity={} seed={}",
            self.generation,
            self.parent_hash,
            self.child_hash,
            self.operator,
            self.target,
            self.seed
        );
        if let Some(iteration) = self.iteration {
            line.push_str(&format!(" iter={iteration}"));
        }
        line
    }
}

/// Append-only sequence of adaptation events.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RuleLineage {
    records: Vec<LineageRecord>,
}

impl RuleLineage {
    pub fn new() -> Self {
        RuleLineage::default()
    }

    pub fn records(&self) -> &[LineageRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// The generation number the next record will carry (1-based).
    pub fn next_generation(&self) -> u64 {
        self.records.len() as u64 + 1
    }

    pub(crate) fn push(&mut self, record: LineageRecord) {
        self.records.push(record);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adapt::MutationTarget;

    #[test]
    fn digest_is_stable() {
        // FNV-1a reference value for the canonical identity rule.
        let digest = source_digest(&RuleSource::from("emit entityState ;"));
        assert_eq!(digest, source_digest(&"emit entityState ;".into()));
        assert_ne!(digest, source_digest(&"emit 0 ;".into()));
    }

    #[test]
    fn log_lines_are_pinned() {
        let record = LineageRecord {
            generation: 1,
            parent_hash: 0x1234,
            child_hash: 0xabcd,
            operator: MutationOperatorKind::SubstituteLiteral,
            target: AdaptedTarget::Shared,
            seed: 42,
            iteration: None,
            descriptor: MutationDescriptor {
                operator: MutationOperatorKind::SubstituteLiteral,
                target: MutationTarget::Expr { index: 0 },
                before: "0".to_owned(),
                after: "1".to_owned(),
                rng_draws: 2,
            },
        };
        assert_eq!(
            record.log_line(),
            "gen=1 parent=0000000000001234 child=000000000000abcd op=SubstituteLiteral entity=shared seed=42"
        );
        let with_iteration = LineageRecord {
            iteration: Some(10),
            target: AdaptedTarget::Entity(3),
            ..record
        };
        assert!(with_iteration.log_line().ends_with("entity=3 seed=42 iter=10"));
    }
}
