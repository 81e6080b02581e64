//! Canonical rendering of syntax trees back into rule source.
//!
//! The output uses single spaces between tokens and one top-level statement
//! per line, so `parse(tokenize(render(a)))` structurally equals `a` and
//! equal trees render to byte-identical text.

use super::ast::{Expr, Program, RuleSource, Stmt};

/// Renders a program to canonical rule source.
pub fn render(program: &Program) -> RuleSource {
    let lines: Vec<String> = program.statements.iter().map(render_stmt).collect();
    RuleSource::new(lines.join("\n"))
}

/// Renders a single statement (nested blocks stay on the same line).
pub(crate) fn render_stmt(statement: &Stmt) -> String {
    match statement {
        Stmt::Let { name, value } => format!("let {name} = {} ;", render_expr(value)),
        Stmt::If {
            condition,
            then_branch,
            else_branch,
        } => {
            let mut text = format!(
                "if {} {{ {} }}",
                render_expr(condition),
                render_stmts(then_branch)
            );
            if let Some(else_branch) = else_branch {
                text.push_str(&format!(" else {{ {} }}", render_stmts(else_branch)));
            }
            text
        }
        Stmt::Emit(value) => format!("emit {} ;", render_expr(value)),
    }
}

/// Renders a statement sequence on a single line.
pub(crate) fn render_stmts(statements: &[Stmt]) -> String {
    statements
        .iter()
        .map(render_stmt)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders an expression with minimal parentheses.
pub(crate) fn render_expr(expr: &Expr) -> String {
    render_prec(expr, 0)
}

const UNARY_LEVEL: u8 = 6;
const PRIMARY_LEVEL: u8 = 7;

fn level(expr: &Expr) -> u8 {
    match expr {
        Expr::Binary(op, _, _) => op.precedence(),
        Expr::Unary(_, _) => UNARY_LEVEL,
        // Negative literals built programmatically render parenthesized so
        // they re-lex as unary negation.
        Expr::Int(value) if *value < 0 => UNARY_LEVEL,
        _ => PRIMARY_LEVEL,
    }
}

fn render_prec(expr: &Expr, min_level: u8) -> String {
    let text = match expr {
        Expr::Int(value) if *value < 0 => format!("- {}", value.unsigned_abs()),
        Expr::Int(value) => value.to_string(),
        Expr::Bool(value) => value.to_string(),
        Expr::EntityState => "entityState".to_owned(),
        Expr::MilieuSum => "milieuSum".to_owned(),
        Expr::MilieuCount => "milieuCount".to_owned(),
        Expr::Milieu(index) => format!("milieu [ {} ]", render_prec(index, 0)),
        Expr::Ident(name) => name.clone(),
        Expr::Unary(op, operand) => {
            format!("{} {}", op.symbol(), render_prec(operand, UNARY_LEVEL))
        }
        Expr::Binary(op, lhs, rhs) => {
            let my_level = op.precedence();
            // Left operand may sit at the same level (left associativity);
            // the right operand must bind strictly tighter. Comparisons do
            // not associate at all, so both sides need to bind tighter.
            let left_min = if op.is_comparison() {
                my_level + 1
            } else {
                my_level
            };
            format!(
                "{} {} {}",
                render_prec(lhs, left_min),
                op.symbol(),
                render_prec(rhs, my_level + 1)
            )
        }
    };
    if level(expr) < min_level {
        format!("( {text} )")
    } else {
        text
    }
}
