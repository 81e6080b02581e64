//! Mutation operators and the policy that weights them.

use std::fmt;

use super::error::AdaptError;

/// The mutation operators. Substitutions rewrite one node in place; the
/// others grow or shrink the statement structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationOperatorKind {
    SubstituteLiteral,
    SubstituteOperator,
    SubstituteReference,
    InsertLet,
    DeleteUnusedLet,
    WrapInIf,
    UnwrapIf,
}

pub(crate) const ALL_OPERATORS: [MutationOperatorKind; 7] = [
    MutationOperatorKind::SubstituteLiteral,
    MutationOperatorKind::SubstituteOperator,
    MutationOperatorKind::SubstituteReference,
    MutationOperatorKind::InsertLet,
    MutationOperatorKind::DeleteUnusedLet,
    MutationOperatorKind::WrapInIf,
    MutationOperatorKind::UnwrapIf,
];

impl MutationOperatorKind {
    fn index(self) -> usize {
        ALL_OPERATORS
            .iter()
            .position(|k| *k == self)
            .expect("operator is listed")
    }

    pub fn name(self) -> &'static str {
        match self {
            MutationOperatorKind::SubstituteLiteral => "SubstituteLiteral",
            MutationOperatorKind::SubstituteOperator => "SubstituteOperator",
            MutationOperatorKind::SubstituteReference => "SubstituteReference",
            MutationOperatorKind::InsertLet => "InsertLet",
            MutationOperatorKind::DeleteUnusedLet => "DeleteUnusedLet",
            MutationOperatorKind::WrapInIf => "WrapInIf",
            MutationOperatorKind::UnwrapIf => "UnwrapIf",
        }
    }
}

impl fmt::Display for MutationOperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Weights over the mutation operators plus the retry and growth bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationPolicy {
    weights: [u32; 7],
    max_retries: usize,
    max_depth: usize,
}

impl Default for MutationPolicy {
    fn default() -> Self {
        MutationPolicy {
            weights: [1; 7],
            max_retries: 16,
            max_depth: 3,
        }
    }
}

impl MutationPolicy {
    /// Builds a policy, rejecting all-zero weights and a zero retry bound.
    pub fn new(
        weights: [(MutationOperatorKind, u32); 7],
        max_retries: usize,
        max_depth: usize,
    ) -> Result<Self, AdaptError> {
        let mut table = [0u32; 7];
        for (kind, weight) in weights {
            table[kind.index()] = weight;
        }
        Self::from_table(table, max_retries, max_depth)
    }

    /// Uniform weights over only the given operators.
    pub fn only(
        operators: &[MutationOperatorKind],
        max_retries: usize,
        max_depth: usize,
    ) -> Result<Self, AdaptError> {
        let mut table = [0u32; 7];
        for kind in operators {
            table[kind.index()] = 1;
        }
        Self::from_table(table, max_retries, max_depth)
    }

    fn from_table(weights: [u32; 7], max_retries: usize, max_depth: usize) -> Result<Self, AdaptError> {
        if weights.iter().all(|w| *w == 0) {
            return Err(AdaptError::InvalidPolicy(
                "operator weights must not all be zero",
            ));
        }
        if max_retries == 0 {
            return Err(AdaptError::InvalidPolicy("max_retries must be at least 1"));
        }
        Ok(MutationPolicy {
            weights,
            max_retries,
            max_depth,
        })
    }

    pub fn weight(&self, kind: MutationOperatorKind) -> u32 {
        self.weights[kind.index()]
    }

    pub fn max_retries(&self) -> usize {
        self.max_retries
    }

    /// Depth bound for generated expressions.
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Draws an operator kind proportionally to its weight.
    pub(crate) fn draw_operator<R: rand::Rng>(&self, rng: &mut R) -> MutationOperatorKind {
        let total: u64 = self.weights.iter().map(|w| *w as u64).sum();
        let mut ticket = rng.random_range(0..total);
        for (kind, weight) in ALL_OPERATORS.iter().zip(self.weights) {
            let weight = weight as u64;
            if ticket < weight {
                return *kind;
            }
            ticket -= weight;
        }
        unreachable!("weights sum to total")
    }
}
