//! Tokens and the closed rule vocabulary.

use std::fmt;

/// Keywords of the rule language. Everything outside this list, the operator
/// table, integer literals, and the `identifier<digits>` family is rejected
/// by the lexer.
pub const KEYWORDS: &[&str] = &["let", "if", "else", "emit", "or", "and", "not"];

/// Boolean literal words.
pub const BOOL_LITERALS: &[&str] = &["true", "false"];

/// The built-in reference to the executing entity's own state.
pub const STATE_REF: &str = "entityState";

/// Built-in references to the entity's milieu.
pub const MILIEU_REFS: &[&str] = &["milieu", "milieuSum", "milieuCount"];

/// Operator and punctuation spellings, longest first so the lexer can match
/// greedily.
pub const OPERATORS: &[&str] = &[
    "==", "!=", "<=", ">=", "<", ">", "+", "-", "*", "/", "%", "=", ";", "(", ")", "[", "]", "{",
    "}",
];

/// The closed vocabulary of the rule language.
///
/// The word and operator sets are fixed; the only open families are integer
/// literals and generated identifiers of the form `identifier<digits>`.
/// There is exactly one vocabulary, obtained via [`Vocabulary::standard`],
/// so holding a `&Vocabulary` is proof of using the real one.
#[derive(Debug, PartialEq, Eq)]
pub struct Vocabulary {
    _sealed: (),
}

static STANDARD: Vocabulary = Vocabulary { _sealed: () };

impl Vocabulary {
    /// The rule-language vocabulary.
    pub fn standard() -> &'static Vocabulary {
        &STANDARD
    }

    /// All fixed words (keywords, boolean literals, built-in references).
    pub fn words(&self) -> Vec<&'static str> {
        let mut words: Vec<&'static str> = Vec::new();
        words.extend_from_slice(KEYWORDS);
        words.extend_from_slice(BOOL_LITERALS);
        words.push(STATE_REF);
        words.extend_from_slice(MILIEU_REFS);
        words
    }

    /// All operator and punctuation spellings.
    pub fn operators(&self) -> &'static [&'static str] {
        OPERATORS
    }

    /// Classifies a word, or returns `None` when it lies outside the
    /// vocabulary families.
    pub fn classify_word(&self, word: &str) -> Option<TokenClass> {
        if KEYWORDS.contains(&word) {
            Some(TokenClass::Keyword)
        } else if BOOL_LITERALS.contains(&word) {
            Some(TokenClass::BoolLiteral)
        } else if word == STATE_REF {
            Some(TokenClass::StateRef)
        } else if MILIEU_REFS.contains(&word) {
            Some(TokenClass::MilieuRef)
        } else if is_generated_identifier(word) {
            Some(TokenClass::GeneratedIdent)
        } else {
            None
        }
    }
}

/// True when `word` belongs to the generated-identifier family
/// `identifier<digits>`.
pub fn is_generated_identifier(word: &str) -> bool {
    match word.strip_prefix("identifier") {
        Some(digits) => !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()),
        None => false,
    }
}

/// Lexical class of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenClass {
    Keyword,
    Operator,
    IntLiteral,
    BoolLiteral,
    StateRef,
    MilieuRef,
    GeneratedIdent,
}

/// Source position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A lexed token: class, exact source text, and position.
///
/// Joining token texts with single spaces re-lexes to the same class/text
/// sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub class: TokenClass,
    pub text: String,
    pub position: Position,
}

impl Token {
    pub fn is_operator(&self, text: &str) -> bool {
        self.class == TokenClass::Operator && self.text == text
    }

    pub fn is_keyword(&self, text: &str) -> bool {
        self.class == TokenClass::Keyword && self.text == text
    }
}
