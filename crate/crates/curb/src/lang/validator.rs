//! Static validation of rule programs.
//!
//! Four rules are enforced:
//!
//! * V1 — every identifier is a let-bound `identifier<digits>` name; `let`
//!   bindings are block-scoped.
//! * V2 — static typing: the emitted value must have the domain's type;
//!   comparisons produce booleans that are usable in conditions only.
//! * V3 — an emit is reachable on every execution path. The check is
//!   conservative: the final statement of the program must emit, where an
//!   `if` emits only when both branches do.
//! * V4 — constant milieu indices must lie in `0..milieu_count`.

use std::collections::HashMap;

use super::ast::{BinaryOp, Expr, Program, RuleProgram, Stmt, UnaryOp};
use super::error::ValidationError;
use super::token::is_generated_identifier;
use crate::metamodel::StateDomain;

/// Value types inside rule expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Ty {
    Int,
    Bool,
}

impl Ty {
    fn name(self) -> &'static str {
        match self {
            Ty::Int => "integer",
            Ty::Bool => "boolean",
        }
    }
}

pub(crate) fn domain_ty(domain: &StateDomain) -> Ty {
    match domain {
        StateDomain::Boolean => Ty::Bool,
        StateDomain::IntegerRange { .. } => Ty::Int,
    }
}

/// Validates a parsed program against a state domain and milieu size,
/// producing an executable [`RuleProgram`].
pub fn validate(
    ast: Program,
    domain: &StateDomain,
    milieu_count: usize,
) -> Result<RuleProgram, ValidationError> {
    let mut checker = Checker {
        domain_ty: domain_ty(domain),
        milieu_count,
        scopes: vec![HashMap::new()],
        node_count: 0,
    };
    checker.check_sequence(&ast.statements)?;
    if !sequence_emits(&ast.statements) {
        return Err(ValidationError::NoEmit);
    }
    Ok(RuleProgram::new(
        ast,
        domain.clone(),
        milieu_count,
        checker.node_count,
    ))
}

/// Conservative reachability: does the final statement emit on every path?
fn sequence_emits(statements: &[Stmt]) -> bool {
    match statements.last() {
        Some(Stmt::Emit(_)) => true,
        Some(Stmt::If {
            then_branch,
            else_branch: Some(else_branch),
            ..
        }) => sequence_emits(then_branch) && sequence_emits(else_branch),
        _ => false,
    }
}

struct Checker {
    domain_ty: Ty,
    milieu_count: usize,
    scopes: Vec<HashMap<String, Ty>>,
    node_count: usize,
}

impl Checker {
    fn check_sequence(&mut self, statements: &[Stmt]) -> Result<(), ValidationError> {
        for statement in statements {
            self.check_statement(statement)?;
        }
        Ok(())
    }

    fn check_statement(&mut self, statement: &Stmt) -> Result<(), ValidationError> {
        self.node_count += 1;
        match statement {
            Stmt::Let { name, value } => {
                if !is_generated_identifier(name) {
                    return Err(ValidationError::BadIdentifier(name.clone()));
                }
                let ty = self.check_expr(value)?;
                self.scopes
                    .last_mut()
                    .expect("scope stack never empty")
                    .insert(name.clone(), ty);
                Ok(())
            }
            Stmt::If {
                condition,
                then_branch,
                else_branch,
            } => {
                let cond_ty = self.check_expr(condition)?;
                if cond_ty != Ty::Bool {
                    return Err(ValidationError::TypeMismatch {
                        context: "if condition".to_owned(),
                        expected: Ty::Bool.name(),
                        found: cond_ty.name(),
                    });
                }
                self.check_block(then_branch)?;
                if let Some(else_branch) = else_branch {
                    self.check_block(else_branch)?;
                }
                Ok(())
            }
            Stmt::Emit(value) => {
                let ty = self.check_expr(value)?;
                if ty != self.domain_ty {
                    return Err(ValidationError::TypeMismatch {
                        context: "emitted value".to_owned(),
                        expected: self.domain_ty.name(),
                        found: ty.name(),
                    });
                }
                Ok(())
            }
        }
    }

    fn check_block(&mut self, statements: &[Stmt]) -> Result<(), ValidationError> {
        self.scopes.push(HashMap::new());
        let result = self.check_sequence(statements);
        self.scopes.pop();
        result
    }

    fn lookup(&self, name: &str) -> Option<Ty> {
        self.scopes.iter().rev().find_map(|s| s.get(name)).copied()
    }

    fn check_expr(&mut self, expr: &Expr) -> Result<Ty, ValidationError> {
        self.node_count += 1;
        match expr {
            Expr::Int(_) => Ok(Ty::Int),
            Expr::Bool(_) => Ok(Ty::Bool),
            Expr::EntityState => Ok(self.domain_ty),
            Expr::MilieuSum | Expr::MilieuCount => Ok(Ty::Int),
            Expr::Milieu(index) => {
                let index_ty = self.check_expr(index)?;
                if index_ty != Ty::Int {
                    return Err(ValidationError::TypeMismatch {
                        context: "milieu index".to_owned(),
                        expected: Ty::Int.name(),
                        found: index_ty.name(),
                    });
                }
                if let Expr::Int(value) = **index {
                    if value < 0 || value as usize >= self.milieu_count {
                        return Err(ValidationError::MilieuIndexOutOfRange {
                            index: value,
                            milieu_count: self.milieu_count,
                        });
                    }
                }
                Ok(self.domain_ty)
            }
            Expr::Ident(name) => {
                if !is_generated_identifier(name) {
                    return Err(ValidationError::BadIdentifier(name.clone()));
                }
                self.lookup(name)
                    .ok_or_else(|| ValidationError::BadIdentifier(name.clone()))
            }
            Expr::Unary(op, operand) => {
                let operand_ty = self.check_expr(operand)?;
                let (expected, result) = match op {
                    UnaryOp::Not => (Ty::Bool, Ty::Bool),
                    UnaryOp::Neg => (Ty::Int, Ty::Int),
                };
                if operand_ty != expected {
                    return Err(ValidationError::TypeMismatch {
                        context: format!("operand of `{}`", op.symbol()),
                        expected: expected.name(),
                        found: operand_ty.name(),
                    });
                }
                Ok(result)
            }
            Expr::Binary(op, lhs, rhs) => {
                let lhs_ty = self.check_expr(lhs)?;
                let rhs_ty = self.check_expr(rhs)?;
                self.check_binary(*op, lhs_ty, rhs_ty)
            }
        }
    }

    fn check_binary(&self, op: BinaryOp, lhs: Ty, rhs: Ty) -> Result<Ty, ValidationError> {
        let mismatch = |expected: Ty, found: Ty| ValidationError::TypeMismatch {
            context: format!("operand of `{}`", op.symbol()),
            expected: expected.name(),
            found: found.name(),
        };
        match op {
            BinaryOp::Or | BinaryOp::And => {
                if lhs != Ty::Bool {
                    return Err(mismatch(Ty::Bool, lhs));
                }
                if rhs != Ty::Bool {
                    return Err(mismatch(Ty::Bool, rhs));
                }
                Ok(Ty::Bool)
            }
            BinaryOp::Eq | BinaryOp::Ne => {
                if lhs != rhs {
                    return Err(mismatch(lhs, rhs));
                }
                Ok(Ty::Bool)
            }
            BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt | BinaryOp::Ge => {
                if lhs != Ty::Int {
                    return Err(mismatch(Ty::Int, lhs));
                }
                if rhs != Ty::Int {
                    return Err(mismatch(Ty::Int, rhs));
                }
                Ok(Ty::Bool)
            }
            BinaryOp::Add | BinaryOp::Sub | BinaryOp::Mul | BinaryOp::Div | BinaryOp::Mod => {
                if lhs != Ty::Int {
                    return Err(mismatch(Ty::Int, lhs));
                }
                if rhs != Ty::Int {
                    return Err(mismatch(Ty::Int, rhs));
                }
                Ok(Ty::Int)
            }
        }
    }
}
