use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A predicate-logic atom such as `act(m, dress)` or `!torn(dress)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredicateAtom {
    pub polarity: Polarity,
    pub predicate: String,
    pub args: Vec<String>,
}

impl PredicateAtom {
    /// Panics if `predicate` or `args` is empty, or more than two args are given.
    pub fn new<S: Into<String>>(
        predicate: impl Into<String>,
        args: impl IntoIterator<Item = S>,
    ) -> Self {
        let atom = PredicateAtom {
            polarity: Polarity::Positive,
            predicate: predicate.into(),
            args: args.into_iter().map(Into::into).collect(),
        };
        assert!(!atom.predicate.is_empty(), "empty predicate name");
        assert!(
            (1..=2).contains(&atom.args.len()),
            "predicate {} takes one or two arguments",
            atom.predicate
        );
        atom
    }

    pub fn unary(predicate: impl Into<String>, arg: impl Into<String>) -> Self {
        PredicateAtom::new(predicate, [arg.into()])
    }

    pub fn binary(
        predicate: impl Into<String>,
        a: impl Into<String>,
        b: impl Into<String>,
    ) -> Self {
        PredicateAtom::new(predicate, [a.into(), b.into()])
    }

    pub fn is_negative(&self) -> bool {
        self.polarity == Polarity::Negative
    }

    /// Flips the polarity.
    pub fn negate(&self) -> Self {
        PredicateAtom {
            polarity: match self.polarity {
                Polarity::Positive => Polarity::Negative,
                Polarity::Negative => Polarity::Positive,
            },
            ..self.clone()
        }
    }
}

impl fmt::Display for PredicateAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            f.write_str("!")?;
        }
        write!(f, "{}({})", self.predicate, self.args.join(", "))
    }
}

/// Joins atoms with ` & `.
pub fn conjunction(atoms: &[PredicateAtom]) -> String {
    atoms
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" & ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_renders_with_bang() {
        let torn = PredicateAtom::unary("torn", "dress");
        assert_eq!(torn.negate().to_string(), "!torn(dress)");
        let leaky = PredicateAtom::unary("leaky", "faucet").negate();
        assert_eq!(leaky.negate().to_string(), "leaky(faucet)");
        assert_eq!(
            PredicateAtom::unary("drowning", "man").negate().to_string(),
            "!drowning(man)"
        );
    }

    #[test]
    fn binary_display() {
        assert_eq!(
            PredicateAtom::binary("act", "m", "dress").to_string(),
            "act(m, dress)"
        );
    }
}
