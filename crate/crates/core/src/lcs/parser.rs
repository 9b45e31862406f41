//! Recursive-descent parser for the bracketed LCS notation.
//!
//! Precedence, loosest first: `|` (each alternative optionally followed by
//! `: weight`), `&`, then juxtaposition inside a bracket. A bracketed
//! sequence is read by shape:
//!
//! ```text
//! [a CAUSE b]      Cause
//! [OP a]           Apply
//! [OP a <s>]       Attribution of <s> to [OP a]
//! [OP a & b ...]   Apply of OP to the conjunction
//! [t <s>]          Attribution (also [t [NOT <s>]])
//! [a t]            Agentive, a a variable or entity
//! [a OP t]         Agentive of [OP t]
//! ```

use std::collections::BTreeSet;

use num_rational::Ratio;

use super::term::{Disjunct, LcsTerm, CAUSE};
use super::{LcsError, Weight};

/// The closed vocabularies the parser needs to classify identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syntax {
    operators: BTreeSet<String>,
    variables: BTreeSet<String>,
}

pub const SEED_OPERATORS: [&str; 10] = [
    "CAUSE",
    "BECOME",
    "IS",
    "ARE",
    "EVERY",
    "NOT",
    "SUBSTANCE-OF",
    "COMFORT",
    "CLEAN",
    "BRUSH",
];

pub const TEMPLATE_VARIABLES: [&str; 5] = ["x", "y", "z", "a", "b"];

impl Default for Syntax {
    fn default() -> Self {
        Syntax {
            operators: SEED_OPERATORS.iter().map(|s| s.to_string()).collect(),
            variables: TEMPLATE_VARIABLES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl Syntax {
    /// Seed operators plus `extra`.
    pub fn with_operators<I, S>(extra: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut syntax = Syntax::default();
        syntax.operators.extend(extra.into_iter().map(Into::into));
        syntax
    }

    pub fn add_operator(&mut self, op: impl Into<String>) {
        self.operators.insert(op.into());
    }

    pub fn is_operator(&self, ident: &str) -> bool {
        ident == CAUSE || self.operators.contains(ident)
    }

    pub fn is_variable(&self, ident: &str) -> bool {
        self.variables.contains(ident)
    }

    pub fn operators(&self) -> impl Iterator<Item = &str> {
        self.operators.iter().map(String::as_str)
    }

    pub fn parse(&self, text: &str) -> Result<LcsTerm, LcsError> {
        let tokens = lex(text)?;
        check_balance(&tokens)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            syntax: self,
            end: text.len(),
        };
        if parser.tokens.is_empty() {
            return Err(LcsError::EmptyExpression);
        }
        let term = parser.body()?;
        if let Some((tok, at)) = parser.tokens.get(parser.pos) {
            return Err(LcsError::UnknownToken {
                position: *at,
                token: tok.describe(),
            });
        }
        Ok(term.normalize())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    State(String),
    Ident(String),
    Amp,
    Pipe,
    Colon,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Open => "[".into(),
            Tok::Close => "]".into(),
            Tok::State(s) => format!("<{s}>"),
            Tok::Ident(s) => s.clone(),
            Tok::Amp => "&".into(),
            Tok::Pipe => "|".into(),
            Tok::Colon => ":".into(),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '^' | '-' | '_' | '.' | '/')
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, LcsError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '[' | ']' | '&' | '|' | ':' => {
                chars.next();
                out.push((
                    match c {
                        '[' => Tok::Open,
                        ']' => Tok::Close,
                        '&' => Tok::Amp,
                        '|' => Tok::Pipe,
                        _ => Tok::Colon,
                    },
                    at,
                ));
            }
            '<' => {
                chars.next();
                let mut name = String::new();
                loop {
                    match chars.next() {
                        Some((_, '>')) => break,
                        Some((_, ch)) if !(ch.is_whitespace() || "[]<".contains(ch)) => {
                            name.push(ch)
                        }
                        _ => return Err(LcsError::UnbalancedBrackets { position: at }),
                    }
                }
                if name.is_empty() {
                    return Err(LcsError::UnknownToken {
                        position: at,
                        token: "<>".into(),
                    });
                }
                out.push((Tok::State(name), at));
            }
            c if is_ident_char(c) => {
                let mut ident = String::new();
                while let Some(&(_, ch)) = chars.peek() {
                    if !is_ident_char(ch) {
                        break;
                    }
                    ident.push(ch);
                    chars.next();
                }
                out.push((Tok::Ident(ident), at));
            }
            '>' => return Err(LcsError::UnbalancedBrackets { position: at }),
            other => {
                return Err(LcsError::UnknownToken {
                    position: at,
                    token: other.to_string(),
                })
            }
        }
    }
    Ok(out)
}

fn check_balance(tokens: &[(Tok, usize)]) -> Result<(), LcsError> {
    let mut open = Vec::new();
    for (tok, at) in tokens {
        match tok {
            Tok::Open => open.push(*at),
            Tok::Close if open.pop().is_none() => {
                return Err(LcsError::UnbalancedBrackets { position: *at });
            }
            _ => {}
        }
    }
    match open.last() {
        Some(&position) => Err(LcsError::UnbalancedBrackets { position }),
        None => Ok(()),
    }
}

enum Item {
    Term(LcsTerm),
    Op(String),
}

struct Parser<'s> {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    syntax: &'s Syntax,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, at)| *at)
            .unwrap_or(self.end)
    }

    fn body(&mut self) -> Result<LcsTerm, LcsError> {
        let start = self.here();
        let mut alts = Vec::new();
        loop {
            let term = self.chain()?;
            let weight = if self.peek() == Some(&Tok::Colon) {
                self.pos += 1;
                Some(self.weight()?)
            } else {
                None
            };
            alts.push(Disjunct { term, weight });
            if self.peek() == Some(&Tok::Pipe) {
                self.pos += 1;
            } else {
                break;
            }
        }
        if alts.len() == 1 {
            let only = alts.pop().unwrap();
            if only.weight.is_some() {
                return Err(LcsError::Malformed {
                    position: start,
                    reason: "weight on a term that is not a disjunct".into(),
                });
            }
            return Ok(only.term);
        }
        let weighted = alts.iter().filter(|d| d.weight.is_some()).count();
        if weighted != 0 && weighted != alts.len() {
            return Err(LcsError::MixedWeights { position: start });
        }
        if weighted != 0 {
            let exact: Ratio<u128> = alts
                .iter()
                .map(|d| {
                    let r = d.weight.unwrap().ratio();
                    Ratio::new(u128::from(*r.numer()), u128::from(*r.denom()))
                })
                .sum();
            if exact != Ratio::from_integer(1) {
                let total = *exact.numer() as f64 / *exact.denom() as f64;
                return Err(LcsError::WeightSum {
                    position: start,
                    total,
                });
            }
        }
        Ok(LcsTerm::Or(alts))
    }

    fn weight(&mut self) -> Result<Weight, LcsError> {
        let at = self.here();
        match self.tokens.get(self.pos) {
            Some((Tok::Ident(text), _)) => {
                let w = text.parse::<Weight>().map_err(|e| LcsError::BadWeight {
                    position: at,
                    text: e.0,
                })?;
                self.pos += 1;
                Ok(w)
            }
            Some((tok, _)) => Err(LcsError::BadWeight {
                position: at,
                text: tok.describe(),
            }),
            None => Err(LcsError::BadWeight {
                position: at,
                text: String::new(),
            }),
        }
    }

    fn chain(&mut self) -> Result<LcsTerm, LcsError> {
        let mut seqs = vec![self.sequence()?];
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            seqs.push(self.sequence()?);
        }
        if seqs.len() == 1 {
            let (items, at) = seqs.pop().unwrap();
            return interpret(items, at);
        }
        let mut seqs = seqs.into_iter();
        let (first, first_at) = seqs.next().unwrap();
        let prefix_op = matches!(
            first.as_slice(),
            [Item::Op(op), Item::Term(_)] if op != CAUSE
        );
        if prefix_op {
            let mut first = first.into_iter();
            let Some(Item::Op(op)) = first.next() else {
                unreachable!()
            };
            let Some(Item::Term(head)) = first.next() else {
                unreachable!()
            };
            let mut conjuncts = vec![head];
            for (items, at) in seqs {
                conjuncts.push(interpret(items, at)?);
            }
            return Ok(LcsTerm::apply(op, LcsTerm::And(conjuncts)));
        }
        let mut conjuncts = vec![interpret(first, first_at)?];
        for (items, at) in seqs {
            conjuncts.push(interpret(items, at)?);
        }
        Ok(LcsTerm::And(conjuncts))
    }

    fn sequence(&mut self) -> Result<(Vec<Item>, usize), LcsError> {
        let start = self.here();
        let mut items = Vec::new();
        while let Some(tok) = self.peek() {
            let at = self.here();
            match tok.clone() {
                Tok::Open => {
                    self.pos += 1;
                    if self.peek() == Some(&Tok::Close) {
                        return Err(LcsError::EmptyExpression);
                    }
                    let inner = self.body()?;
                    match self.peek() {
                        Some(Tok::Close) => self.pos += 1,
                        Some(other) => {
                            return Err(LcsError::UnknownToken {
                                position: self.here(),
                                token: other.describe(),
                            })
                        }
                        None => return Err(LcsError::UnbalancedBrackets { position: self.end }),
                    }
                    items.push(Item::Term(inner));
                }
                Tok::State(name) => {
                    self.pos += 1;
                    items.push(Item::Term(LcsTerm::State(name)));
                }
                Tok::Ident(ident) => {
                    self.pos += 1;
                    items.push(self.classify(ident, at)?);
                }
                Tok::Close | Tok::Amp | Tok::Pipe | Tok::Colon => break,
            }
        }
        if items.is_empty() {
            return Err(match self.tokens.get(self.pos) {
                Some((tok, at)) => LcsError::UnknownToken {
                    position: *at,
                    token: tok.describe(),
                },
                None => LcsError::EmptyExpression,
            });
        }
        Ok((items, start))
    }

    fn classify(&self, ident: String, at: usize) -> Result<Item, LcsError> {
        if self.syntax.is_operator(&ident) {
            return Ok(Item::Op(ident));
        }
        if self.syntax.is_variable(&ident) {
            return Ok(Item::Term(LcsTerm::Var(ident)));
        }
        if is_entity_id(&ident) {
            return Ok(Item::Term(LcsTerm::Entity(ident)));
        }
        Err(LcsError::UnknownToken {
            position: at,
            token: ident,
        })
    }
}

/// Entity ids: lowercase letters, digits, `^`, `-`, `_`, starting with a letter or digit.
pub fn is_entity_id(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit())
        && chars
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || matches!(c, '^' | '-' | '_'))
}

fn interpret(items: Vec<Item>, at: usize) -> Result<LcsTerm, LcsError> {
    let mut it = items.into_iter();
    let shape = (it.next(), it.next(), it.next(), it.next());
    use Item::{Op, Term};
    match shape {
        (Some(Term(t)), None, None, None) => Ok(t),
        (Some(Op(op)), Some(Term(arg)), None, None) if op != CAUSE => Ok(LcsTerm::apply(op, arg)),
        (Some(Term(t)), Some(Term(st)), None, None) if st.is_state_like() => {
            Ok(LcsTerm::attribution(t, st))
        }
        (Some(Term(agent)), Some(Term(action)), None, None) if agent.is_referent() => {
            Ok(LcsTerm::agentive(agent, action))
        }
        (Some(Term(agent)), Some(Op(op)), Some(Term(effect)), None) if op == CAUSE => {
            Ok(LcsTerm::cause(agent, effect))
        }
        (Some(Op(op)), Some(Term(arg)), Some(Term(st)), None)
            if op != CAUSE && st.is_state_like() =>
        {
            Ok(LcsTerm::attribution(LcsTerm::apply(op, arg), st))
        }
        (Some(Term(agent)), Some(Op(op)), Some(Term(arg)), None)
            if op != CAUSE && agent.is_referent() =>
        {
            Ok(LcsTerm::agentive(agent, LcsTerm::apply(op, arg)))
        }
        _ => Err(LcsError::Malformed {
            position: at,
            reason: "unrecognised bracket shape".into(),
        }),
    }
}
