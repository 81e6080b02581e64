//! The code→data transition: closing rule text over concrete state values.
//!
//! Replacement is token-level, never raw substring: the source is lexed
//! first and only whole `entityState`, `milieuSum`, `milieuCount`, and
//! constant-indexed `milieu [ k ]` tokens are rewritten. Substring
//! replacement would also rewrite name fragments inside longer words;
//! token substitution cannot.
//!
//! Scalar references are substituted first, milieu accesses second, so an
//! index that becomes constant through substitution (`milieu [ entityState ]`)
//! still closes.

use crate::lang::{tokenize, Position, RuleSource, TokenClass};
use crate::metamodel::StateValue;

use super::binding::BindingSet;
use super::error::BridgeError;

/// Replaces every state and milieu reference in `source` with the literal
/// of its bound value, yielding a closed rule source with no free
/// references.
pub fn interpolate(source: &RuleSource, bindings: &BindingSet) -> Result<RuleSource, BridgeError> {
    let tokens = tokenize(source)?;

    // Pass 1: close the scalar references.
    let mut scalars_closed: Vec<(TokenClass, String, Position)> = Vec::with_capacity(tokens.len());
    for token in &tokens {
        match token.class {
            TokenClass::StateRef => {
                push_literal(&mut scalars_closed, bindings.entity_state(), token.position);
            }
            TokenClass::MilieuRef if token.text == "milieuSum" => {
                push_int_literal(&mut scalars_closed, bindings.milieu_sum(), token.position);
            }
            TokenClass::MilieuRef if token.text == "milieuCount" => {
                push_int_literal(
                    &mut scalars_closed,
                    bindings.milieu_count() as i64,
                    token.position,
                );
            }
            _ => scalars_closed.push((token.class, token.text.clone(), token.position)),
        }
    }

    // Pass 2: close constant-indexed milieu accesses.
    let mut output: Vec<(TokenClass, String, Position)> = Vec::with_capacity(scalars_closed.len());
    let mut index = 0;
    while index < scalars_closed.len() {
        let (class, text, position) = &scalars_closed[index];
        if *class == TokenClass::MilieuRef {
            let open = scalars_closed.get(index + 1);
            let index_token = scalars_closed.get(index + 2);
            let close = scalars_closed.get(index + 3);
            let bracketed = matches!(open, Some((TokenClass::Operator, t, _)) if t == "[")
                && matches!(close, Some((TokenClass::Operator, t, _)) if t == "]");
            let constant = match index_token {
                Some((TokenClass::IntLiteral, t, _)) if bracketed => t.parse::<i64>().ok(),
                _ => None,
            };
            let Some(k) = constant else {
                return Err(BridgeError::NonConstantMilieuIndex {
                    position: *position,
                });
            };
            let milieu = bindings.milieu_states();
            if k < 0 || k as usize >= milieu.len() {
                return Err(BridgeError::MilieuIndexOutOfRange {
                    index: k,
                    milieu_count: milieu.len(),
                });
            }
            push_literal(&mut output, milieu[k as usize], *position);
            index += 4;
        } else {
            output.push((*class, text.clone(), *position));
            index += 1;
        }
    }

    let texts: Vec<&str> = output.iter().map(|(_, text, _)| text.as_str()).collect();
    Ok(RuleSource::new(texts.join(" ")))
}

fn push_literal(
    output: &mut Vec<(TokenClass, String, Position)>,
    value: StateValue,
    position: Position,
) {
    match value {
        StateValue::Bool(v) => output.push((TokenClass::BoolLiteral, v.to_string(), position)),
        StateValue::Int(v) => push_int_literal(output, v, position),
    }
}

/// Negative values become a parenthesized unary negation so the closed
/// source re-lexes and re-parses at any expression position.
fn push_int_literal(
    output: &mut Vec<(TokenClass, String, Position)>,
    value: i64,
    position: Position,
) {
    if value < 0 {
        output.push((TokenClass::Operator, "(".to_owned(), position));
        output.push((TokenClass::Operator, "-".to_owned(), position));
        output.push((
            TokenClass::IntLiteral,
            value.unsigned_abs().to_string(),
            position,
        ));
        output.push((TokenClass::Operator, ")".to_owned(), position));
    } else {
        output.push((TokenClass::IntLiteral, value.to_string(), position));
    }
}
