//! The LCS term language: AST, parser, canonical printer, normalization,
//! substitution, and the predicate atoms used in event-structure annotations.

mod atom;
mod parser;
mod printer;
mod term;
mod weight;

pub use atom::{conjunction, Polarity, PredicateAtom};
pub use parser::{is_entity_id, Syntax, SEED_OPERATORS, TEMPLATE_VARIABLES};
pub use printer::print;
pub use term::{Disjunct, LcsTerm, UnknownBindings, ARE, BECOME, CAUSE, EVERY, IS, NOT};
pub use weight::{Weight, WeightError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LcsError {
    #[error("unbalanced brackets at byte {position}")]
    UnbalancedBrackets { position: usize },
    #[error("unknown token `{token}` at byte {position}")]
    UnknownToken { position: usize, token: String },
    #[error("empty expression")]
    EmptyExpression,
    #[error("some but not all disjuncts are weighted (disjunction at byte {position})")]
    MixedWeights { position: usize },
    #[error("disjunct weights sum to {total}, expected 1 (disjunction at byte {position})")]
    WeightSum { position: usize, total: f64 },
    #[error("invalid weight `{text}` at byte {position}")]
    BadWeight { position: usize, text: String },
    #[error("malformed expression at byte {position}: {reason}")]
    Malformed { position: usize, reason: String },
    #[error("variable `{0}` has no binding")]
    UnboundVariable(String),
    #[error("binding for `{0}`, which the template does not mention")]
    UnknownBinding(String),
}

/// Parses with the seed operator set and the template variables `x y z a b`.
pub fn parse(text: &str) -> Result<LcsTerm, LcsError> {
    Syntax::default().parse(text)
}
