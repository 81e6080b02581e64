//! Front-end errors: lexing, parsing, and validation.

use thiserror::Error;

use super::token::Position;

/// Errors from the rule-language front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    /// A word outside the vocabulary families. This is the injection
    /// defense surface: foreign names never make it past the lexer.
    #[error("vocabulary violation at {position}: `{word}` is not a rule-language word")]
    VocabularyViolation { word: String, position: Position },

    /// A malformed literal, e.g. digits running into letters.
    #[error("malformed integer literal `{text}` at {position}")]
    MalformedLiteral { text: String, position: Position },

    #[error("syntax error at {position}: expected {expected}, found {found}")]
    Syntax {
        expected: String,
        found: String,
        position: Position,
    },

    #[error(transparent)]
    Validation(#[from] ValidationError),
}

/// Violations of the static validation rules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    /// Identifier outside the `identifier<digits>` family, or used before
    /// its `let`.
    #[error("bad identifier `{0}`: not a let-bound `identifier<digits>` name")]
    BadIdentifier(String),

    #[error("type mismatch: {context}: expected {expected}, found {found}")]
    TypeMismatch {
        context: String,
        expected: &'static str,
        found: &'static str,
    },

    /// No emit is reachable on every path through the statement sequence.
    #[error("no emit reachable on every execution path")]
    NoEmit,

    #[error("milieu index {index} out of range for milieu of {milieu_count} entries")]
    MilieuIndexOutOfRange { index: i64, milieu_count: usize },
}
