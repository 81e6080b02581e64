//! Type-guided operator pools: what mutation may generate for a domain.

use crate::lang::{BinaryOp, UnaryOp};
use crate::metamodel::StateDomain;

/// The expression operators mutation is allowed to introduce. The state
/// type reveals the possible operations: boolean domains get logical
/// connectives and (in)equality over boolean atoms; integer domains get
/// the full arithmetic and comparison set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorPool {
    binary: Vec<BinaryOp>,
    unary: Vec<UnaryOp>,
}

/// Derives the pool for a state domain.
pub fn operator_pool(domain: &StateDomain) -> OperatorPool {
    match domain {
        StateDomain::Boolean => OperatorPool {
            binary: vec![BinaryOp::And, BinaryOp::Or, BinaryOp::Eq, BinaryOp::Ne],
            unary: vec![UnaryOp::Not],
        },
        StateDomain::IntegerRange { .. } => OperatorPool {
            binary: vec![
                BinaryOp::Or,
                BinaryOp::And,
                BinaryOp::Eq,
                BinaryOp::Ne,
                BinaryOp::Lt,
                BinaryOp::Le,
                BinaryOp::Gt,
                BinaryOp::Ge,
                BinaryOp::Add,
                BinaryOp::Sub,
                BinaryOp::Mul,
                BinaryOp::Div,
                BinaryOp::Mod,
            ],
            unary: vec![UnaryOp::Not, UnaryOp::Neg],
        },
    }
}

impl OperatorPool {
    pub fn binary(&self) -> &[BinaryOp] {
        &self.binary
    }

    pub fn unary(&self) -> &[UnaryOp] {
        &self.unary
    }

    pub fn contains_binary(&self, op: BinaryOp) -> bool {
        self.binary.contains(&op)
    }

    pub(crate) fn arithmetic(&self) -> Vec<BinaryOp> {
        self.binary
            .iter()
            .copied()
            .filter(|op| {
                matches!(
                    op,
                    BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div | BinaryOp::Mod
                )
            })
            .collect()
    }

    pub(crate) fn comparisons(&self) -> Vec<BinaryOp> {
        self.binary
            .iter()
            .copied()
            .filter(|op| op.is_comparison())
            .collect()
    }

    pub(crate) fn logical(&self) -> Vec<BinaryOp> {
        self.binary
            .iter()
            .copied()
            .filter(|op| matches!(op, BinaryOp::And | BinaryOp::Or))
            .collect()
    }
}
