//! Monotone generation of fresh identifiers.

use crate::lang::{Expr, Program, Stmt};

/// Issues names of the form `identifier<N>` with a counter that never
/// decreases, so no name is ever reissued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentifierCounter {
    next: u64,
}

impl IdentifierCounter {
    pub fn new(start: u64) -> Self {
        IdentifierCounter { next: start }
    }

    /// Starts above every `identifier<N>` already present in `programs`,
    /// so fresh names cannot collide with hand-written ones.
    pub fn after_programs<'p>(programs: impl IntoIterator<Item = &'p Program>) -> Self {
        let mut max_seen: Option<u64> = None;
        for program in programs {
            scan_stmts(&program.statements, &mut max_seen);
        }
        IdentifierCounter {
            next: max_seen.map_or(0, |n| n.saturating_add(1)),
        }
    }

    /// The index the next generated name will carry.
    pub fn peek(&self) -> u64 {
        self.next
    }

    /// Issues `identifier<next>` and advances the counter.
    pub fn fresh(&mut self) -> String {
        let name = format!("identifier{}", self.next);
        self.next += 1;
        name
    }
}

fn scan_stmts(statements: &[Stmt], max_seen: &mut Option<u64>) {
    for statement in statements {
        match statement {
            Stmt::Let { name, value } => {
                note_name(name, max_seen);
                scan_expr(value, max_seen);
            }
            Stmt::If {
                condition,
                then_branch,
                else_branch,
            } => {
                scan_expr(condition, max_seen);
                scan_stmts(then_branch, max_seen);
                if let Some(else_branch) = else_branch {
                    scan_stmts(else_branch, max_seen);
                }
            }
            Stmt::Emit(value) => scan_expr(value, max_seen),
        }
    }
}

fn scan_expr(expr: &Expr, max_seen: &mut Option<u64>) {
    match expr {
        Expr::Ident(name) => note_name(name, max_seen),
        Expr::Milieu(index) => scan_expr(index, max_seen),
        Expr::Unary(_, operand) => scan_expr(operand, max_seen),
        Expr::Binary(_, lhs, rhs) => {
            scan_expr(lhs, max_seen);
            scan_expr(rhs, max_seen);
        }
        _ => {}
    }
}

fn note_name(name: &str, max_seen: &mut Option<u64>) {
    if let Some(digits) = name.strip_prefix("identifier") {
        if let Ok(n) = digits.parse::<u64>() {
            *max_seen = Some(max_seen.map_or(n, |m| m.max(n)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse, tokenize};

    #[test]
    fn issues_sequential_names() {
        let mut counter = IdentifierCounter::new(0);
        assert_eq!(counter.fresh(), "identifier0");
        assert_eq!(counter.fresh(), "identifier1");
        assert_eq!(counter.peek(), 2);
    }

    #[test]
    fn starts_anywhere() {
        let mut counter = IdentifierCounter::new(7);
        assert_eq!(counter.fresh(), "identifier7");
    }

    #[test]
    fn successive_names_are_distinct() {
        let mut counter = IdentifierCounter::new(0);
        let a = counter.fresh();
        let b = counter.fresh();
        assert_ne!(a, b);
        assert_eq!(counter.peek(), 2);
    }

    #[test]
    fn skips_past_existing_identifiers() {
        let program = parse(
            &tokenize(&"let identifier4 = milieuSum ; emit identifier4 ;".into()).unwrap(),
        )
        .unwrap();
        let mut counter = IdentifierCounter::after_programs([&program]);
        assert_eq!(counter.fresh(), "identifier5");
    }

    #[test]
    fn empty_programs_start_at_zero() {
        let program = parse(&tokenize(&"emit 0 ;".into()).unwrap()).unwrap();
        let counter = IdentifierCounter::after_programs([&program]);
        assert_eq!(counter.peek(), 0);
    }
}
