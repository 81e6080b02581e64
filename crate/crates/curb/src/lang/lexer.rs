//! Lexer for the rule language.
//!
//! The vocabulary is closed: any word outside the fixed word set, the
//! operator table, integer literals, and `identifier<digits>` is rejected
//! with a [`LangError::VocabularyViolation`]. Rejection happens before any
//! parse or execution step, so foreign names cannot travel further into the
//! pipeline.

use super::ast::RuleSource;
use super::error::LangError;
use super::token::{Position, Token, TokenClass, Vocabulary, OPERATORS};

/// Tokenizes rule source. Whitespace is insignificant; the returned tokens
/// cover the entire input.
pub fn tokenize(source: &RuleSource) -> Result<Vec<Token>, LangError> {
    Lexer::new(source.as_str()).run()
}

struct Lexer<'s> {
    rest: &'s str,
    line: u32,
    column: u32,
}

impl<'s> Lexer<'s> {
    fn new(text: &'s str) -> Self {
        Lexer {
            rest: text,
            line: 1,
            column: 1,
        }
    }

    fn position(&self) -> Position {
        Position {
            line: self.line,
            column: self.column,
        }
    }

    fn advance(&mut self, len: usize) {
        let (consumed, rest) = self.rest.split_at(len);
        for ch in consumed.chars() {
            if ch == '\n' {
                self.line += 1;
                self.column = 1;
            } else {
                self.column += 1;
            }
        }
        self.rest = rest;
    }

    fn run(mut self) -> Result<Vec<Token>, LangError> {
        let vocabulary = Vocabulary::standard();
        let mut tokens = Vec::new();
        loop {
            let skip = self
                .rest
                .find(|c: char| !c.is_whitespace())
                .unwrap_or(self.rest.len());
            self.advance(skip);
            if self.rest.is_empty() {
                return Ok(tokens);
            }

            let position = self.position();
            let ch = self.rest.chars().next().expect("non-empty");

            if ch.is_ascii_alphabetic() {
                let word = leading_word(self.rest);
                let class = vocabulary.classify_word(word).ok_or_else(|| {
                    LangError::VocabularyViolation {
                        word: word.to_owned(),
                        position,
                    }
                })?;
                tokens.push(Token {
                    class,
                    text: word.to_owned(),
                    position,
                });
                self.advance(word.len());
            } else if ch.is_ascii_digit() {
                let run = leading_word(self.rest);
                if !run.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(LangError::MalformedLiteral {
                        text: run.to_owned(),
                        position,
                    });
                }
                if run.parse::<i64>().is_err() {
                    return Err(LangError::MalformedLiteral {
                        text: run.to_owned(),
                        position,
                    });
                }
                tokens.push(Token {
                    class: TokenClass::IntLiteral,
                    text: run.to_owned(),
                    position,
                });
                self.advance(run.len());
            } else if let Some(op) = OPERATORS.iter().find(|op| self.rest.starts_with(**op)) {
                tokens.push(Token {
                    class: TokenClass::Operator,
                    text: (*op).to_owned(),
                    position,
                });
                self.advance(op.len());
            } else {
                // Any other character is a foreign word of length one.
                return Err(LangError::VocabularyViolation {
                    word: ch.to_string(),
                    position,
                });
            }
        }
    }
}

/// Longest prefix of alphanumeric/underscore characters.
fn leading_word(text: &str) -> &str {
    let end = text
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(text.len());
    &text[..end]
}
