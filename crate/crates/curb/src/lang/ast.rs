//! Syntax tree for rule programs, plus the code-as-data source wrapper.

use std::fmt;

use crate::metamodel::StateDomain;

/// Rule code held as plain text. This is the only self-modifiable region of
/// a system: passive data until the bridge turns it back into code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleSource(String);

impl RuleSource {
    pub fn new(text: impl Into<String>) -> Self {
        RuleSource(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for RuleSource {
    fn from(text: &str) -> Self {
        RuleSource(text.to_owned())
    }
}

impl From<String> for RuleSource {
    fn from(text: String) -> Self {
        RuleSource(text)
    }
}

impl fmt::Display for RuleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A parsed rule program: a non-empty statement sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub statements: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    /// `let identifierN = expr ;`
    Let { name: String, value: Expr },
    /// `if expr { ... } else { ... }` — blocks are non-empty.
    If {
        condition: Expr,
        then_branch: Vec<Stmt>,
        else_branch: Option<Vec<Stmt>>,
    },
    /// `emit expr ;` — the first executed emit ends the program.
    Emit(Expr),
}

/// Expressions. The grammar has no loops and no calls, so evaluation of any
/// expression visits each node at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Integer literal. The parser only ever produces non-negative values;
    /// negative constants appear as `Unary(Neg, Int(n))`.
    Int(i64),
    Bool(bool),
    /// The executing entity's own state at the current iteration.
    EntityState,
    /// Positional neighbor state: `milieu [ expr ]`.
    Milieu(Box<Expr>),
    /// Sum of all milieu states, booleans counted as 0/1.
    MilieuSum,
    /// Number of milieu entries.
    MilieuCount,
    /// A let-bound generated identifier.
    Ident(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Not,
    Neg,
}

impl UnaryOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            UnaryOp::Not => "not",
            UnaryOp::Neg => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Or,
    And,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
}

impl BinaryOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            BinaryOp::Or => "or",
            BinaryOp::And => "and",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Mod => "%",
        }
    }

    /// Precedence level, higher binds tighter. Mirrors the grammar:
    /// or < and < comparison < additive < multiplicative.
    pub fn precedence(&self) -> u8 {
        match self {
            BinaryOp::Or => 1,
            BinaryOp::And => 2,
            BinaryOp::Eq | BinaryOp::Ne | BinaryOp::Lt | BinaryOp::Le | BinaryOp::Gt
            | BinaryOp::Ge => 3,
            BinaryOp::Add | BinaryOp::Sub => 4,
            BinaryOp::Mul | BinaryOp::Div | BinaryOp::Mod => 5,
        }
    }

    pub fn is_comparison(&self) -> bool {
        self.precedence() == 3
    }
}

/// A validated rule program: the syntax tree together with the domain and
/// milieu size it was checked against. Only `validate` constructs one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleProgram {
    ast: Program,
    state_domain: StateDomain,
    milieu_count: usize,
    node_count: usize,
}

impl RuleProgram {
    pub(crate) fn new(
        ast: Program,
        state_domain: StateDomain,
        milieu_count: usize,
        node_count: usize,
    ) -> Self {
        RuleProgram {
            ast,
            state_domain,
            milieu_count,
            node_count,
        }
    }

    pub fn ast(&self) -> &Program {
        &self.ast
    }

    pub fn state_domain(&self) -> &StateDomain {
        &self.state_domain
    }

    pub fn milieu_count(&self) -> usize {
        self.milieu_count
    }

    /// Total number of statement and expression nodes; the evaluator's fuel
    /// budget is derived from this.
    pub fn node_count(&self) -> usize {
        self.node_count
    }
}
