//! Single-operator mutation of rule programs.
//!
//! A mutation draws one operator, applies it at one drawn target, and
//! returns the candidate tree plus a descriptor that can replay the exact
//! edit on the parent. Everything inserted comes from the vocabulary,
//! literals of the domain, milieu indices, and fresh or in-scope
//! identifiers; the caller re-validates the candidate before accepting it.

use rand::{Rng, RngCore};

use crate::lang::{
    parse_expr_fragment, parse_stmts_fragment, render_expr, render_stmt, render_stmts, tokenize,
    Expr, LangError, Program, RuleProgram, Stmt, Ty,
};
use crate::metamodel::{StateDomain, StateValue};

use super::error::AdaptError;
use super::generate::{gen_expr, literal_expr, GenContext};
use super::identifier::IdentifierCounter;
use super::policy::{MutationOperatorKind, MutationPolicy};
use super::pool::operator_pool;
use super::visit::{analyze, count_uses, replace_expr_at, visible_bindings, with_list_mut};

/// Where a mutation applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MutationTarget {
    /// Preorder index of an expression node.
    Expr { index: usize },
    /// Statement `pos` of preorder list `list`.
    Stmt { list: usize, pos: usize },
    /// Insertion before statement `pos` of list `list`.
    Insert { list: usize, pos: usize },
}

/// A replayable record of one mutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationDescriptor {
    pub operator: MutationOperatorKind,
    pub target: MutationTarget,
    /// Rendered fragment before the edit (empty for insertions).
    pub before: String,
    /// Rendered fragment after the edit (empty for deletions).
    pub after: String,
    /// Number of raw RNG words consumed while producing the candidate.
    pub rng_draws: u64,
}

impl MutationDescriptor {
    /// Re-applies this mutation to the parent tree, reproducing the
    /// candidate without any randomness.
    pub fn replay(&self, parent: &Program) -> Result<Program, AdaptError> {
        let mut child = parent.clone();
        let found = match (&self.operator, &self.target) {
            (
                MutationOperatorKind::SubstituteLiteral
                | MutationOperatorKind::SubstituteOperator
                | MutationOperatorKind::SubstituteReference,
                MutationTarget::Expr { index },
            ) => {
                let replacement = parse_fragment_expr(&self.after)?;
                replace_expr_at(&mut child.statements, *index, replacement)
            }
            (MutationOperatorKind::InsertLet, MutationTarget::Insert { list, pos }) => {
                let statements = parse_fragment_stmts(&self.after)?;
                let (list, pos) = (*list, *pos);
                with_list_mut(&mut child.statements, list, move |l| {
                    for (offset, statement) in statements.into_iter().enumerate() {
                        l.insert(pos + offset, statement);
                    }
                })
            }
            (MutationOperatorKind::DeleteUnusedLet, MutationTarget::Stmt { list, pos }) => {
                let pos = *pos;
                with_list_mut(&mut child.statements, *list, move |l| {
                    l.remove(pos);
                })
            }
            (
                MutationOperatorKind::WrapInIf | MutationOperatorKind::UnwrapIf,
                MutationTarget::Stmt { list, pos },
            ) => {
                let statements = parse_fragment_stmts(&self.after)?;
                let pos = *pos;
                with_list_mut(&mut child.statements, *list, move |l| {
                    l.splice(pos..=pos, statements);
                })
            }
            _ => false,
        };
        if !found {
            return Err(AdaptError::NoApplicableOperator);
        }
        Ok(child)
    }
}

fn parse_fragment_expr(text: &str) -> Result<Expr, LangError> {
    parse_expr_fragment(&tokenize(&text.into())?)
}

fn parse_fragment_stmts(text: &str) -> Result<Vec<Stmt>, LangError> {
    parse_stmts_fragment(&tokenize(&text.into())?)
}

/// RNG wrapper that counts raw draws for the descriptor.
struct CountingRng<'r, R: RngCore> {
    inner: &'r mut R,
    draws: u64,
}

impl<R: RngCore> RngCore for CountingRng<'_, R> {
    fn next_u32(&mut self) -> u32 {
        self.draws += 1;
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.draws += 1;
        self.inner.fill_bytes(dest);
    }
}

/// Applies exactly one mutation operator to `parent`, returning the
/// candidate tree (not yet validated) and its descriptor.
pub fn mutate<R: Rng>(
    parent: &RuleProgram,
    policy: &MutationPolicy,
    rng: &mut R,
    counter: &mut IdentifierCounter,
) -> Result<(Program, MutationDescriptor), AdaptError> {
    let mut rng = CountingRng {
        inner: rng,
        draws: 0,
    };
    let operator = policy.draw_operator(&mut rng);
    let analysis = analyze(parent.ast(), parent.state_domain());
    let outcome = match operator {
        MutationOperatorKind::SubstituteLiteral => {
            substitute_literal(parent, &analysis, &mut rng)
        }
        MutationOperatorKind::SubstituteOperator => {
            substitute_operator(parent, &analysis, &mut rng)
        }
        MutationOperatorKind::SubstituteReference => {
            substitute_reference(parent, &analysis, &mut rng)
        }
        MutationOperatorKind::InsertLet => insert_let(parent, &analysis, policy, &mut rng, counter),
        MutationOperatorKind::DeleteUnusedLet => delete_unused_let(parent, &analysis, &mut rng),
        MutationOperatorKind::WrapInIf => wrap_in_if(parent, &analysis, policy, &mut rng),
        MutationOperatorKind::UnwrapIf => unwrap_if(parent, &analysis, &mut rng),
    };
    let (child, target, before, after) = outcome?;
    let descriptor = MutationDescriptor {
        operator,
        target,
        before,
        after,
        rng_draws: rng.draws,
    };
    Ok((child, descriptor))
}

type Edit = (Program, MutationTarget, String, String);

fn pick<'a, T, R: Rng>(candidates: &'a [T], rng: &mut R) -> Result<&'a T, AdaptError> {
    if candidates.is_empty() {
        return Err(AdaptError::NoApplicableOperator);
    }
    Ok(&candidates[rng.random_range(0..candidates.len())])
}

fn apply_expr_substitution(
    parent: &RuleProgram,
    index: usize,
    replacement: Expr,
    before: &Expr,
) -> Edit {
    let mut child = parent.ast().clone();
    let found = replace_expr_at(&mut child.statements, index, replacement.clone());
    debug_assert!(found, "analysis index always exists");
    (
        child,
        MutationTarget::Expr { index },
        render_expr(before),
        render_expr(&replacement),
    )
}

fn substitute_literal<R: Rng>(
    parent: &RuleProgram,
    analysis: &super::visit::Analysis,
    rng: &mut R,
) -> Result<Edit, AdaptError> {
    let domain = parent.state_domain();
    // A literal target is applicable when a different literal can replace
    // it: milieu indices draw from the index range, value positions from
    // the domain's own literals.
    let mut applicable: Vec<(usize, Vec<Expr>)> = Vec::new();
    for (index, info) in analysis.exprs.iter().enumerate() {
        let alternatives: Vec<Expr> = match &info.node {
            Expr::Bool(current) => vec![Expr::Bool(!current)],
            Expr::Int(current) if info.is_milieu_index => (0..parent.milieu_count() as i64)
                .filter(|k| k != current)
                .map(Expr::Int)
                .collect(),
            Expr::Int(current) => match domain {
                StateDomain::Boolean => Vec::new(),
                StateDomain::IntegerRange { .. } => domain
                    .values()
                    .into_iter()
                    .filter(|v| *v != StateValue::Int(*current))
                    .map(literal_expr)
                    .collect(),
            },
            _ => continue,
        };
        if !alternatives.is_empty() {
            applicable.push((index, alternatives));
        }
    }
    let (index, alternatives) = pick(&applicable, rng)?;
    let replacement = pick(alternatives, rng)?.clone();
    Ok(apply_expr_substitution(
        parent,
        *index,
        replacement,
        &analysis.exprs[*index].node,
    ))
}

fn substitute_operator<R: Rng>(
    parent: &RuleProgram,
    analysis: &super::visit::Analysis,
    rng: &mut R,
) -> Result<Edit, AdaptError> {
    use crate::lang::BinaryOp;
    let pool = operator_pool(parent.state_domain());
    let mut applicable: Vec<(usize, Vec<BinaryOp>)> = Vec::new();
    for (index, info) in analysis.exprs.iter().enumerate() {
        let Expr::Binary(op, _, _) = &info.node else {
            continue;
        };
        let family: Vec<BinaryOp> = if matches!(op, BinaryOp::Or | BinaryOp::And) {
            pool.logical()
        } else if op.is_comparison() {
            match info.operand_ty {
                // Boolean operands only support (in)equality.
                Some(Ty::Bool) => pool
                    .comparisons()
                    .into_iter()
                    .filter(|c| matches!(c, BinaryOp::Eq | BinaryOp::Ne))
                    .collect(),
                _ => pool.comparisons(),
            }
        } else {
            pool.arithmetic()
        };
        let alternatives: Vec<BinaryOp> = family.into_iter().filter(|c| c != op).collect();
        if !alternatives.is_empty() {
            applicable.push((index, alternatives));
        }
    }
    let (index, alternatives) = pick(&applicable, rng)?;
    let replacement_op = *pick(alternatives, rng)?;
    let Expr::Binary(_, lhs, rhs) = &analysis.exprs[*index].node else {
        unreachable!("only binary nodes collected");
    };
    let replacement = Expr::Binary(replacement_op, lhs.clone(), rhs.clone());
    Ok(apply_expr_substitution(
        parent,
        *index,
        replacement,
        &analysis.exprs[*index].node,
    ))
}

fn substitute_reference<R: Rng>(
    parent: &RuleProgram,
    analysis: &super::visit::Analysis,
    rng: &mut R,
) -> Result<Edit, AdaptError> {
    let domain_ty = crate::lang::domain_ty(parent.state_domain());
    let milieu_count = parent.milieu_count();
    let mut applicable: Vec<(usize, Vec<Expr>)> = Vec::new();
    for (index, info) in analysis.exprs.iter().enumerate() {
        let is_reference = match &info.node {
            Expr::EntityState | Expr::MilieuSum | Expr::MilieuCount | Expr::Ident(_) => true,
            Expr::Milieu(inner) => matches!(**inner, Expr::Int(_)),
            _ => false,
        };
        if !is_reference {
            continue;
        }
        let mut alternatives: Vec<Expr> = Vec::new();
        if domain_ty == info.ty {
            alternatives.push(Expr::EntityState);
            for k in 0..milieu_count {
                alternatives.push(Expr::Milieu(Box::new(Expr::Int(k as i64))));
            }
        }
        if info.ty == Ty::Int {
            alternatives.push(Expr::MilieuSum);
            alternatives.push(Expr::MilieuCount);
        }
        for (name, ty) in visible_bindings(&info.scope) {
            if ty == info.ty {
                alternatives.push(Expr::Ident(name));
            }
        }
        alternatives.retain(|candidate| *candidate != info.node);
        if !alternatives.is_empty() {
            applicable.push((index, alternatives));
        }
    }
    let (index, alternatives) = pick(&applicable, rng)?;
    let replacement = pick(alternatives, rng)?.clone();
    Ok(apply_expr_substitution(
        parent,
        *index,
        replacement,
        &analysis.exprs[*index].node,
    ))
}

fn insert_let<R: Rng>(
    parent: &RuleProgram,
    analysis: &super::visit::Analysis,
    policy: &MutationPolicy,
    rng: &mut R,
    counter: &mut IdentifierCounter,
) -> Result<Edit, AdaptError> {
    // Every existing statement slot is an insertion point "before this
    // statement"; inserting after the final statement would break the
    // emit-on-every-path rule.
    let slot = pick(&analysis.stmts, rng)?;
    let domain = parent.state_domain();
    let pool = operator_pool(domain);
    let scope = visible_bindings(&slot.scope);
    let ty = match domain {
        StateDomain::Boolean => Ty::Bool,
        StateDomain::IntegerRange { .. } => {
            if rng.random_range(0..2) == 0 {
                Ty::Int
            } else {
                Ty::Bool
            }
        }
    };
    let ctx = GenContext {
        domain,
        milieu_count: parent.milieu_count(),
        pool: &pool,
        scope: &scope,
    };
    let value = gen_expr(&ctx, ty, policy.max_depth(), rng);
    let name = counter.fresh();
    let statement = Stmt::Let { name, value };
    let mut child = parent.ast().clone();
    let (list, pos) = (slot.list, slot.pos);
    let inserted = statement.clone();
    let found = with_list_mut(&mut child.statements, list, move |l| {
        l.insert(pos, inserted);
    });
    debug_assert!(found);
    Ok((
        child,
        MutationTarget::Insert { list, pos },
        String::new(),
        render_stmt(&statement),
    ))
}

fn delete_unused_let<R: Rng>(
    parent: &RuleProgram,
    analysis: &super::visit::Analysis,
    rng: &mut R,
) -> Result<Edit, AdaptError> {
    let applicable: Vec<&super::visit::StmtInfo> = analysis
        .stmts
        .iter()
        .filter(|info| {
            let Stmt::Let { name, .. } = &info.node else {
                return false;
            };
            // Blocks must stay non-empty, and only never-used names die.
            !(info.pos == 0 && info.is_final)
                && count_uses(&parent.ast().statements, name) == 0
        })
        .collect();
    let slot = pick(&applicable, rng)?;
    let mut child = parent.ast().clone();
    let pos = slot.pos;
    let found = with_list_mut(&mut child.statements, slot.list, move |l| {
        l.remove(pos);
    });
    debug_assert!(found);
    Ok((
        child,
        MutationTarget::Stmt {
            list: slot.list,
            pos: slot.pos,
        },
        render_stmt(&slot.node),
        String::new(),
    ))
}

fn wrap_in_if<R: Rng>(
    parent: &RuleProgram,
    analysis: &super::visit::Analysis,
    policy: &MutationPolicy,
    rng: &mut R,
) -> Result<Edit, AdaptError> {
    let applicable: Vec<&super::visit::StmtInfo> = analysis
        .stmts
        .iter()
        .filter(|info| match &info.node {
            // Wrapping hides a binding inside the new block; only lets
            // nobody reads can be wrapped.
            Stmt::Let { name, .. } => count_uses(&parent.ast().statements, name) == 0,
            _ => true,
        })
        .collect();
    let slot = pick(&applicable, rng)?;
    let domain = parent.state_domain();
    let pool = operator_pool(domain);
    let scope = visible_bindings(&slot.scope);
    let ctx = GenContext {
        domain,
        milieu_count: parent.milieu_count(),
        pool: &pool,
        scope: &scope,
    };
    let condition = gen_expr(&ctx, Ty::Bool, policy.max_depth(), rng);
    // The final statement of a list wraps with a duplicated else branch so
    // an emit stays reachable on every path.
    let wrapped = Stmt::If {
        condition,
        then_branch: vec![slot.node.clone()],
        else_branch: slot.is_final.then(|| vec![slot.node.clone()]),
    };
    let mut child = parent.ast().clone();
    let pos = slot.pos;
    let replacement = wrapped.clone();
    let found = with_list_mut(&mut child.statements, slot.list, move |l| {
        l[pos] = replacement;
    });
    debug_assert!(found);
    Ok((
        child,
        MutationTarget::Stmt {
            list: slot.list,
            pos: slot.pos,
        },
        render_stmt(&slot.node),
        render_stmt(&wrapped),
    ))
}

fn unwrap_if<R: Rng>(
    parent: &RuleProgram,
    analysis: &super::visit::Analysis,
    rng: &mut R,
) -> Result<Edit, AdaptError> {
    let applicable: Vec<&super::visit::StmtInfo> = analysis
        .stmts
        .iter()
        .filter(|info| matches!(info.node, Stmt::If { .. }))
        .collect();
    let slot = pick(&applicable, rng)?;
    let Stmt::If {
        then_branch,
        else_branch,
        ..
    } = &slot.node
    else {
        unreachable!("only ifs collected");
    };
    let branch = match else_branch {
        None => then_branch,
        Some(else_branch) => {
            if rng.random_range(0..2) == 0 {
                then_branch
            } else {
                else_branch
            }
        }
    };
    let mut child = parent.ast().clone();
    let pos = slot.pos;
    let spliced = branch.clone();
    let found = with_list_mut(&mut child.statements, slot.list, move |l| {
        l.splice(pos..=pos, spliced);
    });
    debug_assert!(found);
    Ok((
        child,
        MutationTarget::Stmt {
            list: slot.list,
            pos: slot.pos,
        },
        render_stmt(&slot.node),
        render_stmts(branch),
    ))
}
