//! Deterministic enumeration of mutation targets.
//!
//! Expressions and statement lists are numbered in a fixed preorder, so a
//! numeric path taken from an analysis can later be replayed against the
//! same parent tree. The walk also records, for every slot, the scope of
//! identifiers visible there (needed for type-guided substitution and
//! generation).

use crate::lang::{domain_ty, Expr, Program, Stmt, Ty};
use crate::metamodel::StateDomain;

/// One expression node in preorder.
#[derive(Debug, Clone)]
pub(crate) struct ExprInfo {
    pub ty: Ty,
    /// For binary nodes: the type of the operands (the left one; validated
    /// programs agree where it matters).
    pub operand_ty: Option<Ty>,
    /// True when this node is the literal index of a `milieu [ k ]` access.
    pub is_milieu_index: bool,
    /// Identifiers visible here, in binding order, possibly with rebinding
    /// duplicates (the last entry per name wins).
    pub scope: Vec<(String, Ty)>,
    pub node: Expr,
}

/// One statement slot: list number and position within that list.
#[derive(Debug, Clone)]
pub(crate) struct StmtInfo {
    pub list: usize,
    pub pos: usize,
    pub is_final: bool,
    pub scope: Vec<(String, Ty)>,
    pub node: Stmt,
}

#[derive(Debug, Clone)]
pub(crate) struct Analysis {
    pub exprs: Vec<ExprInfo>,
    pub stmts: Vec<StmtInfo>,
}

/// Deduplicates a scope snapshot: keeps the latest binding per name, in
/// order of latest occurrence.
pub(crate) fn visible_bindings(scope: &[(String, Ty)]) -> Vec<(String, Ty)> {
    let mut seen: Vec<&str> = Vec::new();
    let mut out: Vec<(String, Ty)> = Vec::new();
    for (name, ty) in scope.iter().rev() {
        if !seen.contains(&name.as_str()) {
            seen.push(name);
            out.push((name.clone(), *ty));
        }
    }
    out.reverse();
    out
}

/// Enumerates every expression and statement slot of a valid program.
pub(crate) fn analyze(program: &Program, domain: &StateDomain) -> Analysis {
    let mut walker = Walker {
        domain_ty: domain_ty(domain),
        exprs: Vec::new(),
        stmts: Vec::new(),
        next_list: 0,
    };
    let mut scope = Vec::new();
    walker.walk_list(&program.statements, &mut scope);
    Analysis {
        exprs: walker.exprs,
        stmts: walker.stmts,
    }
}

struct Walker {
    domain_ty: Ty,
    exprs: Vec<ExprInfo>,
    stmts: Vec<StmtInfo>,
    next_list: usize,
}

impl Walker {
    fn walk_list(&mut self, statements: &[Stmt], scope: &mut Vec<(String, Ty)>) {
        let list_id = self.next_list;
        self.next_list += 1;
        let depth_at_entry = scope.len();
        for (pos, statement) in statements.iter().enumerate() {
            self.stmts.push(StmtInfo {
                list: list_id,
                pos,
                is_final: pos + 1 == statements.len(),
                scope: scope.clone(),
                node: statement.clone(),
            });
            match statement {
                Stmt::Let { name, value } => {
                    let ty = self.type_of(value, scope);
                    self.walk_expr(value, scope, false);
                    scope.push((name.clone(), ty));
                }
                Stmt::If {
                    condition,
                    then_branch,
                    else_branch,
                } => {
                    self.walk_expr(condition, scope, false);
                    self.walk_list(then_branch, scope);
                    if let Some(else_branch) = else_branch {
                        self.walk_list(else_branch, scope);
                    }
                }
                Stmt::Emit(value) => self.walk_expr(value, scope, false),
            }
        }
        scope.truncate(depth_at_entry);
    }

    fn walk_expr(&mut self, expr: &Expr, scope: &[(String, Ty)], is_milieu_index: bool) {
        let ty = self.type_of(expr, scope);
        let operand_ty = match expr {
            Expr::Binary(_, lhs, _) => Some(self.type_of(lhs, scope)),
            _ => None,
        };
        self.exprs.push(ExprInfo {
            ty,
            operand_ty,
            is_milieu_index,
            scope: scope.to_vec(),
            node: expr.clone(),
        });
        match expr {
            Expr::Milieu(index) => {
                let index_is_literal = matches!(**index, Expr::Int(_));
                self.walk_expr(index, scope, index_is_literal);
            }
            Expr::Unary(_, operand) => self.walk_expr(operand, scope, false),
            Expr::Binary(_, lhs, rhs) => {
                self.walk_expr(lhs, scope, false);
                self.walk_expr(rhs, scope, false);
            }
            _ => {}
        }
    }

    /// Types a node of a validated program. Unbound identifiers cannot
    /// occur there; the fallback keeps this total anyway.
    fn type_of(&self, expr: &Expr, scope: &[(String, Ty)]) -> Ty {
        match expr {
            Expr::Int(_) | Expr::MilieuSum | Expr::MilieuCount => Ty::Int,
            Expr::Bool(_) => Ty::Bool,
            Expr::EntityState | Expr::Milieu(_) => self.domain_ty,
            Expr::Ident(name) => scope
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, ty)| *ty)
                .unwrap_or(Ty::Int),
            Expr::Unary(op, _) => match op {
                crate::lang::UnaryOp::Not => Ty::Bool,
                crate::lang::UnaryOp::Neg => Ty::Int,
            },
            Expr::Binary(op, _, _) => {
                use crate::lang::BinaryOp::*;
                match op {
                    Or | And | Eq | Ne | Lt | Le | Gt | Ge => Ty::Bool,
                    Add | Sub | Mul | Div | Mod => Ty::Int,
                }
            }
        }
    }
}

/// Replaces the expression node with preorder index `target`; returns
/// whether the index was found.
pub(crate) fn replace_expr_at(statements: &mut [Stmt], target: usize, replacement: Expr) -> bool {
    let mut counter = 0usize;
    replace_in_list(statements, target, &mut counter, &mut Some(replacement))
}

fn replace_in_list(
    statements: &mut [Stmt],
    target: usize,
    counter: &mut usize,
    replacement: &mut Option<Expr>,
) -> bool {
    for statement in statements.iter_mut() {
        let done = match statement {
            Stmt::Let { value, .. } | Stmt::Emit(value) => {
                replace_in_expr(value, target, counter, replacement)
            }
            Stmt::If {
                condition,
                then_branch,
                else_branch,
            } => {
                replace_in_expr(condition, target, counter, replacement)
                    || replace_in_list(then_branch, target, counter, replacement)
                    || else_branch
                        .as_mut()
                        .is_some_and(|eb| replace_in_list(eb, target, counter, replacement))
            }
        };
        if done {
            return true;
        }
    }
    false
}

fn replace_in_expr(
    expr: &mut Expr,
    target: usize,
    counter: &mut usize,
    replacement: &mut Option<Expr>,
) -> bool {
    if *counter == target {
        *expr = replacement.take().expect("replacement used once");
        *counter += 1;
        return true;
    }
    *counter += 1;
    match expr {
        Expr::Milieu(index) => replace_in_expr(index, target, counter, replacement),
        Expr::Unary(_, operand) => replace_in_expr(operand, target, counter, replacement),
        Expr::Binary(_, lhs, rhs) => {
            replace_in_expr(lhs, target, counter, replacement)
                || replace_in_expr(rhs, target, counter, replacement)
        }
        _ => false,
    }
}

/// Runs `edit` on the statement list with the given preorder number;
/// returns whether the list exists.
pub(crate) fn with_list_mut(
    statements: &mut Vec<Stmt>,
    list: usize,
    edit: impl FnOnce(&mut Vec<Stmt>),
) -> bool {
    let mut next = 0usize;
    let mut edit = Some(edit);
    list_walk(statements, list, &mut next, &mut edit)
}

fn list_walk(
    statements: &mut Vec<Stmt>,
    target: usize,
    next: &mut usize,
    edit: &mut Option<impl FnOnce(&mut Vec<Stmt>)>,
) -> bool {
    let this = *next;
    *next += 1;
    if this == target {
        (edit.take().expect("edit used once"))(statements);
        return true;
    }
    for statement in statements.iter_mut() {
        if let Stmt::If {
            then_branch,
            else_branch,
            ..
        } = statement
        {
            if list_walk(then_branch, target, next, edit) {
                return true;
            }
            if let Some(else_branch) = else_branch {
                if list_walk(else_branch, target, next, edit) {
                    return true;
                }
            }
        }
    }
    false
}

/// Counts uses (not definitions) of an identifier anywhere in the program.
pub(crate) fn count_uses(statements: &[Stmt], name: &str) -> usize {
    statements
        .iter()
        .map(|statement| match statement {
            Stmt::Let { value, .. } | Stmt::Emit(value) => count_uses_expr(value, name),
            Stmt::If {
                condition,
                then_branch,
                else_branch,
            } => {
                count_uses_expr(condition, name)
                    + count_uses(then_branch, name)
                    + else_branch
                        .as_ref()
                        .map_or(0, |eb| count_uses(eb, name))
            }
        })
        .sum()
}

fn count_uses_expr(expr: &Expr, name: &str) -> usize {
    match expr {
        Expr::Ident(n) => usize::from(n == name),
        Expr::Milieu(index) => count_uses_expr(index, name),
        Expr::Unary(_, operand) => count_uses_expr(operand, name),
        Expr::Binary(_, lhs, rhs) => count_uses_expr(lhs, name) + count_uses_expr(rhs, name),
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse, tokenize};

    fn program(source: &str) -> Program {
        parse(&tokenize(&source.into()).unwrap()).unwrap()
    }

    fn int01() -> StateDomain {
        StateDomain::integer_range(0, 1).unwrap()
    }

    #[test]
    fn preorder_numbering_matches_replacement() {
        let mut p = program("if entityState == 1 { emit milieu [ 0 ] ; } emit milieuSum + 2 ;");
        let analysis = analyze(&p, &int01());
        // Find the literal 2 and replace it via its preorder index.
        let (index, _) = analysis
            .exprs
            .iter()
            .enumerate()
            .find(|(_, info)| info.node == Expr::Int(2))
            .unwrap();
        assert!(replace_expr_at(&mut p.statements, index, Expr::Int(7)));
        let reanalysis = analyze(&p, &int01());
        assert_eq!(reanalysis.exprs[index].node, Expr::Int(7));
    }

    #[test]
    fn milieu_index_literals_are_flagged() {
        let p = program("emit milieu [ 1 ] ;");
        let analysis = analyze(&p, &int01());
        let flagged: Vec<_> = analysis
            .exprs
            .iter()
            .filter(|info| info.is_milieu_index)
            .collect();
        assert_eq!(flagged.len(), 1);
        assert_eq!(flagged[0].node, Expr::Int(1));
    }

    #[test]
    fn scopes_respect_binding_order_and_blocks() {
        let p = program(
            "let identifier0 = 1 ;\n\
             if entityState == 1 { let identifier1 = 2 ; emit identifier1 ; }\n\
             emit identifier0 ;",
        );
        let analysis = analyze(&p, &int01());
        // The final emit sees identifier0 but not the block-scoped
        // identifier1.
        let last = analysis.stmts.last().unwrap();
        let visible = visible_bindings(&last.scope);
        assert_eq!(visible.len(), 1);
        assert_eq!(visible[0].0, "identifier0");
        // The let's own expression does not see its own binding.
        let first_expr = &analysis.exprs[0];
        assert!(first_expr.scope.is_empty());
    }

    #[test]
    fn rebinding_keeps_the_latest_type() {
        let p = program(
            "let identifier0 = 1 ;\nlet identifier0 = true ;\nemit 0 ;",
        );
        let analysis = analyze(&p, &int01());
        let last = analysis.stmts.last().unwrap();
        let visible = visible_bindings(&last.scope);
        assert_eq!(visible, vec![("identifier0".to_owned(), Ty::Bool)]);
    }

    #[test]
    fn list_numbering_is_preorder() {
        let mut p = program(
            "if true { emit 0 ; } else { emit 1 ; }",
        );
        // List 0 = top, 1 = then, 2 = else.
        assert!(with_list_mut(&mut p.statements, 2, |l| {
            l.push(Stmt::Emit(Expr::Int(0)));
        }));
        let Stmt::If { else_branch, .. } = &p.statements[0] else {
            panic!("if expected");
        };
        assert_eq!(else_branch.as_ref().unwrap().len(), 2);
        assert!(!with_list_mut(&mut p.statements, 9, |_| {}));
    }

    #[test]
    fn use_counting_ignores_definitions() {
        let p = program("let identifier0 = 1 ; emit identifier0 + identifier0 ;");
        assert_eq!(count_uses(&p.statements, "identifier0"), 2);
        assert_eq!(count_uses(&p.statements, "identifier1"), 0);
    }
}
