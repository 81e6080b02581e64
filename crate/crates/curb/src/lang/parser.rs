//! Recursive-descent parser.
//!
//! Grammar (stmt-level):
//!
//! ```text
//! program := stmt+
//! stmt    := "let" IDENT "=" expr ";" | "if" expr block ("else" block)? | "emit" expr ";"
//! block   := "{" stmt+ "}"
//! ```
//!
//! Expressions follow the usual precedence ladder: `or` < `and` <
//! comparison < additive < multiplicative < unary. Comparisons do not
//! associate: `a < b < c` is a syntax error.

use super::ast::{BinaryOp, Expr, Program, Stmt, UnaryOp};
use super::error::LangError;
use super::token::{Position, Token, TokenClass};

/// Parses a token sequence into a program.
pub fn parse(tokens: &[Token]) -> Result<Program, LangError> {
    let mut parser = Parser { tokens, index: 0 };
    let statements = parser.statement_sequence_until_end()?;
    Ok(Program { statements })
}

/// Parses a single expression fragment (used to replay mutation
/// descriptors). The whole token sequence must be consumed.
pub(crate) fn parse_expr_fragment(tokens: &[Token]) -> Result<Expr, LangError> {
    let mut parser = Parser { tokens, index: 0 };
    let expr = parser.expression()?;
    parser.expect_end()?;
    Ok(expr)
}

/// Parses a statement-sequence fragment (used to replay mutation
/// descriptors).
pub(crate) fn parse_stmts_fragment(tokens: &[Token]) -> Result<Vec<Stmt>, LangError> {
    let mut parser = Parser { tokens, index: 0 };
    parser.statement_sequence_until_end()
}

struct Parser<'t> {
    tokens: &'t [Token],
    index: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.index)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let token = self.tokens.get(self.index);
        self.index += 1;
        token
    }

    fn end_position(&self) -> Position {
        self.tokens
            .last()
            .map(|t| t.position)
            .unwrap_or(Position { line: 1, column: 1 })
    }

    fn error(&self, expected: impl Into<String>) -> LangError {
        let (found, position) = match self.peek() {
            Some(token) => (format!("`{}`", token.text), token.position),
            None => ("end of input".to_owned(), self.end_position()),
        };
        LangError::Syntax {
            expected: expected.into(),
            found,
            position,
        }
    }

    fn expect_operator(&mut self, op: &str) -> Result<(), LangError> {
        match self.peek() {
            Some(token) if token.is_operator(op) => {
                self.index += 1;
                Ok(())
            }
            _ => Err(self.error(format!("`{op}`"))),
        }
    }

    fn expect_end(&self) -> Result<(), LangError> {
        if self.index == self.tokens.len() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn statement_sequence_until_end(&mut self) -> Result<Vec<Stmt>, LangError> {
        let mut statements = vec![self.statement()?];
        while self.peek().is_some() {
            statements.push(self.statement()?);
        }
        Ok(statements)
    }

    fn statement(&mut self) -> Result<Stmt, LangError> {
        match self.peek() {
            Some(token) if token.is_keyword("let") => self.let_statement(),
            Some(token) if token.is_keyword("if") => self.if_statement(),
            Some(token) if token.is_keyword("emit") => self.emit_statement(),
            _ => Err(self.error("a statement (`let`, `if`, or `emit`)")),
        }
    }

    fn let_statement(&mut self) -> Result<Stmt, LangError> {
        self.bump(); // let
        let name = match self.peek() {
            Some(token) if token.class == TokenClass::GeneratedIdent => {
                let name = token.text.clone();
                self.index += 1;
                name
            }
            _ => return Err(self.error("an identifier")),
        };
        self.expect_operator("=")?;
        let value = self.expression()?;
        self.expect_operator(";")?;
        Ok(Stmt::Let { name, value })
    }

    fn if_statement(&mut self) -> Result<Stmt, LangError> {
        self.bump(); // if
        let condition = self.expression()?;
        let then_branch = self.block()?;
        let else_branch = match self.peek() {
            Some(token) if token.is_keyword("else") => {
                self.index += 1;
                Some(self.block()?)
            }
            _ => None,
        };
        Ok(Stmt::If {
            condition,
            then_branch,
            else_branch,
        })
    }

    fn emit_statement(&mut self) -> Result<Stmt, LangError> {
        self.bump(); // emit
        let value = self.expression()?;
        self.expect_operator(";")?;
        Ok(Stmt::Emit(value))
    }

    fn block(&mut self) -> Result<Vec<Stmt>, LangError> {
        self.expect_operator("{")?;
        let mut statements = vec![self.statement()?];
        loop {
            match self.peek() {
                Some(token) if token.is_operator("}") => {
                    self.index += 1;
                    return Ok(statements);
                }
                Some(_) => statements.push(self.statement()?),
                None => return Err(self.error("`}`")),
            }
        }
    }

    fn expression(&mut self) -> Result<Expr, LangError> {
        self.or_expression()
    }

    fn or_expression(&mut self) -> Result<Expr, LangError> {
        let mut lhs = self.and_expression()?;
        while matches!(self.peek(), Some(t) if t.is_keyword("or")) {
            self.index += 1;
            let rhs = self.and_expression()?;
            lhs = Expr::Binary(BinaryOp::Or, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and_expression(&mut self) -> Result<Expr, LangError> {
        let mut lhs = self.comparison()?;
        while matches!(self.peek(), Some(t) if t.is_keyword("and")) {
            self.index += 1;
            let rhs = self.comparison()?;
            lhs = Expr::Binary(BinaryOp::And, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn comparison(&mut self) -> Result<Expr, LangError> {
        let lhs = self.additive()?;
        let op = match self.peek() {
            Some(token) if token.class == TokenClass::Operator => match token.text.as_str() {
                "==" => Some(BinaryOp::Eq),
                "!=" => Some(BinaryOp::Ne),
                "<" => Some(BinaryOp::Lt),
                "<=" => Some(BinaryOp::Le),
                ">" => Some(BinaryOp::Gt),
                ">=" => Some(BinaryOp::Ge),
                _ => None,
            },
            _ => None,
        };
        match op {
            Some(op) => {
                self.index += 1;
                let rhs = self.additive()?;
                Ok(Expr::Binary(op, Box::new(lhs), Box::new(rhs)))
            }
            None => Ok(lhs),
        }
    }

    fn additive(&mut self) -> Result<Expr, LangError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Some(t) if t.is_operator("+") => BinaryOp::Add,
                Some(t) if t.is_operator("-") => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.index += 1;
            let rhs = self.multiplicative()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, LangError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(t) if t.is_operator("*") => BinaryOp::Mul,
                Some(t) if t.is_operator("/") => BinaryOp::Div,
                Some(t) if t.is_operator("%") => BinaryOp::Mod,
                _ => return Ok(lhs),
            };
            self.index += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, LangError> {
        match self.peek() {
            Some(token) if token.is_keyword("not") => {
                self.index += 1;
                let operand = self.unary()?;
                Ok(Expr::Unary(UnaryOp::Not, Box::new(operand)))
            }
            Some(token) if token.is_operator("-") => {
                self.index += 1;
                let operand = self.unary()?;
                Ok(Expr::Unary(UnaryOp::Neg, Box::new(operand)))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr, LangError> {
        let token = match self.peek() {
            Some(token) => token,
            None => return Err(self.error("an expression")),
        };
        match token.class {
            TokenClass::IntLiteral => {
                let value: i64 = token.text.parse().expect("lexer validated literal");
                self.index += 1;
                Ok(Expr::Int(value))
            }
            TokenClass::BoolLiteral => {
                let value = token.text == "true";
                self.index += 1;
                Ok(Expr::Bool(value))
            }
            TokenClass::StateRef => {
                self.index += 1;
                Ok(Expr::EntityState)
            }
            TokenClass::MilieuRef => match token.text.as_str() {
                "milieuSum" => {
                    self.index += 1;
                    Ok(Expr::MilieuSum)
                }
                "milieuCount" => {
                    self.index += 1;
                    Ok(Expr::MilieuCount)
                }
                _ => {
                    self.index += 1;
                    self.expect_operator("[")?;
                    let index = self.expression()?;
                    self.expect_operator("]")?;
                    Ok(Expr::Milieu(Box::new(index)))
                }
            },
            TokenClass::GeneratedIdent => {
                let name = token.text.clone();
                self.index += 1;
                Ok(Expr::Ident(name))
            }
            TokenClass::Operator if token.text == "(" => {
                self.index += 1;
                let inner = self.expression()?;
                self.expect_operator(")")?;
                Ok(inner)
            }
            _ => Err(self.error("an expression")),
        }
    }
}
