use std::fmt;

use super::term::{Disjunct, LcsTerm, ARE, IS};

// Canonical rendering. `unit` always produces a single bracketed item (or an
// atom); `bare` produces bracket contents. Top-level conjunctions print bare,
// everything else as a unit.

impl fmt::Display for LcsTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcsTerm::And(_) => bare(self, f),
            _ => unit(self, f),
        }
    }
}

/// Canonical text of `term`.
pub fn print(term: &LcsTerm) -> String {
    term.to_string()
}

fn unit(term: &LcsTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match term {
        LcsTerm::Var(name) | LcsTerm::Entity(name) => f.write_str(name),
        LcsTerm::State(name) => write!(f, "<{name}>"),
        _ => {
            f.write_str("[")?;
            bare(term, f)?;
            f.write_str("]")
        }
    }
}

fn operator_name(operator: &str, plural: bool) -> &str {
    if plural && operator == IS {
        ARE
    } else {
        operator
    }
}

fn bare(term: &LcsTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match term {
        LcsTerm::Var(_) | LcsTerm::Entity(_) | LcsTerm::State(_) => unit(term, f),
        LcsTerm::Attribution { subject, state } => {
            match **subject {
                LcsTerm::Apply { ref arg, .. } if !matches!(**arg, LcsTerm::And(_)) => {
                    bare(subject, f)?
                }
                _ => unit(subject, f)?,
            }
            f.write_str(" ")?;
            unit(state, f)
        }
        LcsTerm::Apply {
            operator,
            arg,
            plural,
        } => {
            f.write_str(operator_name(operator, *plural))?;
            f.write_str(" ")?;
            match &**arg {
                LcsTerm::And(_) => bare(arg, f),
                _ => unit(arg, f),
            }
        }
        LcsTerm::Cause { agent, effect } => {
            unit(agent, f)?;
            f.write_str(" CAUSE ")?;
            unit(effect, f)
        }
        LcsTerm::Agentive { agent, action } => {
            unit(agent, f)?;
            f.write_str(" ")?;
            unit(action, f)
        }
        LcsTerm::And(items) => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(" & ")?;
                }
                unit(item, f)?;
            }
            Ok(())
        }
        LcsTerm::Or(items) => {
            for (i, Disjunct { term, weight }) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(" | ")?;
                }
                match term {
                    LcsTerm::Or(_) => unit(term, f)?,
                    _ => bare(term, f)?,
                }
                if let Some(w) = weight {
                    write!(f, " : {w}")?;
                }
            }
            Ok(())
        }
    }
}
