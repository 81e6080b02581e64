//! The restricted rule language: lexer, parser, validator, and renderer.
//!
//! Rules are built from a closed vocabulary of words and operators plus two
//! open families — integer literals and generated identifiers matching
//! `identifier<digits>`. The grammar has no loops and no calls, so every
//! program terminates by construction.

mod ast;
mod error;
mod lexer;
mod parser;
mod render;
mod token;
mod validator;

pub use ast::{BinaryOp, Expr, Program, RuleProgram, RuleSource, Stmt, UnaryOp};
pub use error::{LangError, ValidationError};
pub use lexer::tokenize;
pub use parser::parse;
pub use render::render;
pub use token::{is_generated_identifier, Position, Token, TokenClass, Vocabulary};
pub use validator::validate;

pub(crate) use parser::{parse_expr_fragment, parse_stmts_fragment};
pub(crate) use render::{render_expr, render_stmt, render_stmts};
pub(crate) use validator::{domain_ty, Ty};

/// Convenience front end: tokenize, parse, and validate in one call.
pub fn compile(
    source: &RuleSource,
    domain: &crate::metamodel::StateDomain,
    milieu_count: usize,
) -> Result<RuleProgram, LangError> {
    let tokens = tokenize(source)?;
    let ast = parse(&tokens)?;
    validate(ast, domain, milieu_count).map_err(LangError::from)
}
