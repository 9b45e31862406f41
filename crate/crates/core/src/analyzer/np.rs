use std::fmt;

use super::AnalyzerError;
use crate::lcs::{LcsTerm, IS};
use crate::lexicon::{Lexeme, Lexicon, PosTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NpShape {
    /// A noun with no adjectives.
    Bare,
    /// `[IS [y z]]`
    PlainSingleState,
    /// `[IS [y z]] & [IS [a b]]`
    Mixture,
    /// `[IS [IS [x y] z]]`
    MultiState,
}

impl NpShape {
    pub fn as_str(self) -> &'static str {
        match self {
            NpShape::Bare => "bare",
            NpShape::PlainSingleState => "plain-single-state",
            NpShape::Mixture => "mixture",
            NpShape::MultiState => "multi-state",
        }
    }
}

impl fmt::Display for NpShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpState {
    pub shape: NpShape,
    pub term: LcsTerm,
}

impl NpState {
    /// Whether `term` has the layout `shape` promises.
    pub fn is_well_formed(&self) -> bool {
        match (self.shape, &self.term) {
            (NpShape::Mixture, LcsTerm::And(parts)) => {
                parts.len() == 2 && parts.iter().all(|p| depth(p) == Some(1))
            }
            (NpShape::Mixture, _) => false,
            (NpShape::Bare, t) => depth(t) == Some(0),
            (NpShape::PlainSingleState, t) => depth(t) == Some(1),
            (NpShape::MultiState, t) => depth(t).is_some_and(|d| d >= 2),
        }
    }
}

/// Nesting depth of `[IS [.. <s>]]` around a referent.
fn depth(t: &LcsTerm) -> Option<usize> {
    match t {
        t if t.is_referent() => Some(0),
        LcsTerm::Apply { operator, arg, .. } if operator == IS => match &**arg {
            LcsTerm::Attribution { subject, state } if matches!(**state, LcsTerm::State(_)) => {
                depth(subject).map(|d| d + 1)
            }
            _ => None,
        },
        _ => None,
    }
}

pub(crate) fn lexeme<'a>(lex: &'a Lexicon, id: &str) -> Result<&'a Lexeme, AnalyzerError> {
    lex.lexeme(id)
        .ok_or_else(|| AnalyzerError::UnknownLexeme(id.to_string()))
}

pub(crate) fn noun<'a>(lex: &'a Lexicon, id: &str) -> Result<&'a Lexeme, AnalyzerError> {
    let l = lexeme(lex, id)?;
    if l.pos.is_noun() {
        Ok(l)
    } else {
        Err(AnalyzerError::bad_pos(l, "NN or NNP"))
    }
}

pub(crate) fn adjective<'a>(lex: &'a Lexicon, id: &str) -> Result<&'a Lexeme, AnalyzerError> {
    let l = lexeme(lex, id)?;
    if l.pos == PosTag::JJ {
        Ok(l)
    } else {
        Err(AnalyzerError::bad_pos(l, "JJ"))
    }
}

pub(crate) fn referent(lex: &Lexicon, id: &str) -> Result<String, AnalyzerError> {
    lex.referent(id)
        .map_err(|_| AnalyzerError::UnknownLexeme(id.to_string()))
}

fn is_state(subject: LcsTerm, adjective: &Lexeme) -> LcsTerm {
    LcsTerm::apply(
        IS,
        LcsTerm::attribution(subject, LcsTerm::state(adjective.spelling.clone())),
    )
}

/// The state an adjective-modified noun denotes. Several adjectives nest,
/// the first one innermost.
pub fn np_state(
    lex: &Lexicon,
    object: &str,
    adjectives: &[String],
) -> Result<NpState, AnalyzerError> {
    let noun = noun(lex, object)?;
    let mut term = LcsTerm::entity(referent(lex, &noun.id)?);
    for id in adjectives {
        term = is_state(term, adjective(lex, id)?);
    }
    let shape = match adjectives.len() {
        0 => NpShape::Bare,
        1 => NpShape::PlainSingleState,
        _ => NpShape::MultiState,
    };
    Ok(NpState { shape, term })
}

/// Two nouns, each with one property.
pub fn np_mixture(
    lex: &Lexicon,
    first: (&str, &str),
    second: (&str, &str),
) -> Result<NpState, AnalyzerError> {
    let mut parts = Vec::new();
    for (object, adj) in [first, second] {
        let noun = noun(lex, object)?;
        parts.push(is_state(
            LcsTerm::entity(referent(lex, &noun.id)?),
            adjective(lex, adj)?,
        ));
    }
    Ok(NpState {
        shape: NpShape::Mixture,
        term: LcsTerm::And(parts),
    })
}
