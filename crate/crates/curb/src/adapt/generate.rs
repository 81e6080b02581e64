//! Depth-bounded generation of typed expressions for `InsertLet` and
//! `WrapInIf`.
//!
//! Everything generated is assembled from the vocabulary, literals of the
//! domain, milieu indices, and identifiers already in scope — never from
//! foreign tokens.

use rand::Rng;

use crate::lang::{BinaryOp, Expr, Ty, UnaryOp};
use crate::metamodel::{StateDomain, StateValue};

use super::pool::OperatorPool;

pub(crate) struct GenContext<'a> {
    pub domain: &'a StateDomain,
    pub milieu_count: usize,
    pub pool: &'a OperatorPool,
    /// Identifiers visible at the generation site, with their types, in
    /// binding order.
    pub scope: &'a [(String, Ty)],
}

impl<'a> GenContext<'a> {
    fn domain_ty(&self) -> Ty {
        match self.domain {
            StateDomain::Boolean => Ty::Bool,
            StateDomain::IntegerRange { .. } => Ty::Int,
        }
    }

    fn idents_of(&self, ty: Ty) -> Vec<&'a str> {
        self.scope
            .iter()
            .filter(|(_, t)| *t == ty)
            .map(|(name, _)| name.as_str())
            .collect()
    }
}

/// Wraps a literal value as an expression; negatives become unary
/// negation so the tree stays parser-reachable.
pub(crate) fn literal_expr(value: StateValue) -> Expr {
    match value {
        StateValue::Bool(v) => Expr::Bool(v),
        StateValue::Int(v) if v < 0 => Expr::Unary(UnaryOp::Neg, Box::new(Expr::Int(-v))),
        StateValue::Int(v) => Expr::Int(v),
    }
}

/// Generates an expression of the requested type with nesting depth at most
/// `depth`.
pub(crate) fn gen_expr<R: Rng>(
    ctx: &GenContext<'_>,
    ty: Ty,
    depth: usize,
    rng: &mut R,
) -> Expr {
    if depth == 0 {
        return gen_atom(ctx, ty, rng);
    }
    match ty {
        Ty::Bool => gen_bool(ctx, depth, rng),
        Ty::Int => gen_int(ctx, depth, rng),
    }
}

fn gen_bool<R: Rng>(ctx: &GenContext<'_>, depth: usize, rng: &mut R) -> Expr {
    let logical = ctx.pool.logical();
    let comparisons = ctx.pool.comparisons();
    // Choices: atom, not, logical connective, comparison of integers
    // (only when the pool has comparisons), equality of domain atoms.
    let mut choices: Vec<u8> = vec![0, 1];
    if !logical.is_empty() {
        choices.push(2);
    }
    if !comparisons.is_empty() {
        choices.push(3);
    }
    choices.push(4);
    match choices[rng.random_range(0..choices.len())] {
        0 => gen_atom(ctx, Ty::Bool, rng),
        1 => Expr::Unary(
            UnaryOp::Not,
            Box::new(gen_expr(ctx, Ty::Bool, depth - 1, rng)),
        ),
        2 => {
            let op = logical[rng.random_range(0..logical.len())];
            Expr::Binary(
                op,
                Box::new(gen_expr(ctx, Ty::Bool, depth - 1, rng)),
                Box::new(gen_expr(ctx, Ty::Bool, depth - 1, rng)),
            )
        }
        3 => {
            let op = comparisons[rng.random_range(0..comparisons.len())];
            Expr::Binary(
                op,
                Box::new(gen_expr(ctx, Ty::Int, depth - 1, rng)),
                Box::new(gen_expr(ctx, Ty::Int, depth - 1, rng)),
            )
        }
        _ => {
            // Equality over atoms of the domain type.
            let op = if rng.random_range(0..2) == 0 {
                BinaryOp::Eq
            } else {
                BinaryOp::Ne
            };
            let ty = ctx.domain_ty();
            Expr::Binary(
                op,
                Box::new(gen_atom(ctx, ty, rng)),
                Box::new(gen_atom(ctx, ty, rng)),
            )
        }
    }
}

fn gen_int<R: Rng>(ctx: &GenContext<'_>, depth: usize, rng: &mut R) -> Expr {
    let arithmetic = ctx.pool.arithmetic();
    if arithmetic.is_empty() || rng.random_range(0..3) == 0 {
        return gen_atom(ctx, Ty::Int, rng);
    }
    let op = arithmetic[rng.random_range(0..arithmetic.len())];
    let lhs = gen_expr(ctx, Ty::Int, depth - 1, rng);
    let mut rhs = gen_expr(ctx, Ty::Int, depth - 1, rng);
    // A literal zero divisor would always fail at runtime; nudge it to one.
    if matches!(op, BinaryOp::Div | BinaryOp::Mod) && rhs == Expr::Int(0) {
        rhs = Expr::Int(1);
    }
    Expr::Binary(op, Box::new(lhs), Box::new(rhs))
}

fn gen_atom<R: Rng>(ctx: &GenContext<'_>, ty: Ty, rng: &mut R) -> Expr {
    let mut candidates: Vec<Expr> = Vec::new();
    let domain_ty = ctx.domain_ty();
    match ty {
        Ty::Int => {
            candidates.push(Expr::MilieuSum);
            candidates.push(Expr::MilieuCount);
            if domain_ty == Ty::Int {
                candidates.push(Expr::EntityState);
                if ctx.milieu_count > 0 {
                    let k = rng.random_range(0..ctx.milieu_count);
                    candidates.push(Expr::Milieu(Box::new(Expr::Int(k as i64))));
                }
                let values = ctx.domain.values();
                candidates.push(literal_expr(values[rng.random_range(0..values.len())]));
            }
        }
        Ty::Bool => {
            candidates.push(Expr::Bool(rng.random_range(0..2) == 0));
            if domain_ty == Ty::Bool {
                candidates.push(Expr::EntityState);
                if ctx.milieu_count > 0 {
                    let k = rng.random_range(0..ctx.milieu_count);
                    candidates.push(Expr::Milieu(Box::new(Expr::Int(k as i64))));
                }
            }
        }
    }
    let idents = ctx.idents_of(ty);
    if !idents.is_empty() {
        let name = idents[rng.random_range(0..idents.len())];
        candidates.push(Expr::Ident(name.to_owned()));
    }
    candidates.swap_remove(rng.random_range(0..candidates.len()))
}
