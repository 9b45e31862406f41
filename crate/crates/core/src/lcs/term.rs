use std::collections::{BTreeMap, BTreeSet};

use super::{LcsError, Weight};

pub const NOT: &str = "NOT";
pub const IS: &str = "IS";
pub const ARE: &str = "ARE";
pub const CAUSE: &str = "CAUSE";
pub const BECOME: &str = "BECOME";
pub const EVERY: &str = "EVERY";

/// A node of the bracketed LCS language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LcsTerm {
    /// Free template variable (`x`, `y`, ...).
    Var(String),
    /// Ground referent (`m`, `dress`, `carpet^1`).
    Entity(String),
    /// Angle-bracket state constant, stored without the brackets.
    State(String),
    /// `[dress <mended>]`. `state` is a state constant, possibly negated.
    Attribution {
        subject: Box<LcsTerm>,
        state: Box<LcsTerm>,
    },
    /// Prefix operator application. `ARE` is stored as `IS` with `plural` set.
    Apply {
        operator: String,
        arg: Box<LcsTerm>,
        plural: bool,
    },
    /// `[x CAUSE e]`.
    Cause {
        agent: Box<LcsTerm>,
        effect: Box<LcsTerm>,
    },
    /// `[f [COMFORT ...]]`: an agent wrapping its action.
    Agentive {
        agent: Box<LcsTerm>,
        action: Box<LcsTerm>,
    },
    And(Vec<LcsTerm>),
    Or(Vec<Disjunct>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Disjunct {
    pub term: LcsTerm,
    pub weight: Option<Weight>,
}

impl Disjunct {
    pub fn new(term: LcsTerm) -> Self {
        Disjunct { term, weight: None }
    }

    pub fn weighted(term: LcsTerm, weight: Weight) -> Self {
        Disjunct {
            term,
            weight: Some(weight),
        }
    }
}

impl LcsTerm {
    pub fn var(name: impl Into<String>) -> Self {
        LcsTerm::Var(name.into())
    }

    pub fn entity(id: impl Into<String>) -> Self {
        LcsTerm::Entity(id.into())
    }

    pub fn state(name: impl Into<String>) -> Self {
        LcsTerm::State(name.into())
    }

    pub fn attribution(subject: LcsTerm, state: LcsTerm) -> Self {
        LcsTerm::Attribution {
            subject: Box::new(subject),
            state: Box::new(state),
        }
    }

    pub fn apply(operator: impl Into<String>, arg: LcsTerm) -> Self {
        let operator = operator.into();
        let plural = operator == ARE;
        LcsTerm::Apply {
            operator: if plural { IS.to_string() } else { operator },
            arg: Box::new(arg),
            plural,
        }
    }

    pub fn cause(agent: LcsTerm, effect: LcsTerm) -> Self {
        LcsTerm::Cause {
            agent: Box::new(agent),
            effect: Box::new(effect),
        }
    }

    pub fn agentive(agent: LcsTerm, action: LcsTerm) -> Self {
        LcsTerm::Agentive {
            agent: Box::new(agent),
            action: Box::new(action),
        }
    }

    pub fn negation(term: LcsTerm) -> Self {
        LcsTerm::apply(NOT, term)
    }

    /// Variables and entities: the terms that can stand as agents.
    pub fn is_referent(&self) -> bool {
        matches!(self, LcsTerm::Var(_) | LcsTerm::Entity(_))
    }

    /// A state constant or a negated state constant.
    pub fn is_state_like(&self) -> bool {
        match self {
            LcsTerm::State(_) => true,
            LcsTerm::Apply { operator, arg, .. } => {
                operator == NOT && matches!(**arg, LcsTerm::State(_))
            }
            _ => false,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring in the term.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |t| {
            if let LcsTerm::Var(name) = t {
                out.insert(name.clone());
            }
        });
        out
    }

    /// Pre-order traversal over every node.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a LcsTerm)) {
        visit(self);
        match self {
            LcsTerm::Var(_) | LcsTerm::Entity(_) | LcsTerm::State(_) => {}
            LcsTerm::Attribution { subject, state } => {
                subject.walk(visit);
                state.walk(visit);
            }
            LcsTerm::Apply { arg, .. } => arg.walk(visit),
            LcsTerm::Cause { agent, effect } => {
                agent.walk(visit);
                effect.walk(visit);
            }
            LcsTerm::Agentive { agent, action } => {
                agent.walk(visit);
                action.walk(visit);
            }
            LcsTerm::And(items) => items.iter().for_each(|t| t.walk(visit)),
            LcsTerm::Or(items) => items.iter().for_each(|d| d.term.walk(visit)),
        }
    }

    /// Rebuilds the term bottom-up, applying `f` to every rebuilt node.
    pub fn map_bottom_up(self, f: &mut impl FnMut(LcsTerm) -> LcsTerm) -> LcsTerm {
        let rebuilt = match self {
            leaf @ (LcsTerm::Var(_) | LcsTerm::Entity(_) | LcsTerm::State(_)) => leaf,
            LcsTerm::Attribution { subject, state } => LcsTerm::Attribution {
                subject: Box::new(subject.map_bottom_up(f)),
                state: Box::new(state.map_bottom_up(f)),
            },
            LcsTerm::Apply {
                operator,
                arg,
                plural,
            } => LcsTerm::Apply {
                operator,
                arg: Box::new(arg.map_bottom_up(f)),
                plural,
            },
            LcsTerm::Cause { agent, effect } => LcsTerm::Cause {
                agent: Box::new(agent.map_bottom_up(f)),
                effect: Box::new(effect.map_bottom_up(f)),
            },
            LcsTerm::Agentive { agent, action } => LcsTerm::Agentive {
                agent: Box::new(agent.map_bottom_up(f)),
                action: Box::new(action.map_bottom_up(f)),
            },
            LcsTerm::And(items) => {
                LcsTerm::And(items.into_iter().map(|t| t.map_bottom_up(f)).collect())
            }
            LcsTerm::Or(items) => LcsTerm::Or(
                items
                    .into_iter()
                    .map(|d| Disjunct {
                        term: d.term.map_bottom_up(f),
                        weight: d.weight,
                    })
                    .collect(),
            ),
        };
        f(rebuilt)
    }

    /// Flattens nested `&`/`|`, removes double negation.
    ///
    /// A weighted `|` nested in an unweighted one (or the reverse) is left
    /// nested, since flattening would have to invent or drop weights.
    pub fn normalize(self) -> LcsTerm {
        self.map_bottom_up(&mut normalize_node)
    }

    /// Structural equality after normalization. Conjunct and disjunct order matters.
    pub fn equal(&self, other: &LcsTerm) -> bool {
        self.clone().normalize() == other.clone().normalize()
    }

    /// Replaces every variable by the entity it is bound to. Bindings for
    /// variables the term does not mention are ignored.
    pub fn substitute(&self, bindings: &BTreeMap<String, String>) -> Result<LcsTerm, LcsError> {
        self.substitute_with(bindings, UnknownBindings::Ignore)
    }

    pub fn substitute_with(
        &self,
        bindings: &BTreeMap<String, String>,
        unknown: UnknownBindings,
    ) -> Result<LcsTerm, LcsError> {
        let free = self.free_vars();
        if let Some(missing) = free.iter().find(|v| !bindings.contains_key(*v)) {
            return Err(LcsError::UnboundVariable(missing.clone()));
        }
        if unknown == UnknownBindings::Reject {
            if let Some(extra) = bindings.keys().find(|k| !free.contains(*k)) {
                return Err(LcsError::UnknownBinding(extra.clone()));
            }
        }
        Ok(self.clone().map_bottom_up(&mut |t| match t {
            LcsTerm::Var(name) => LcsTerm::Entity(bindings[&name].clone()),
            other => other,
        }))
    }
}

/// What `substitute_with` does with bindings whose variable is absent from the term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnknownBindings {
    #[default]
    Ignore,
    Reject,
}

fn normalize_node(term: LcsTerm) -> LcsTerm {
    match term {
        LcsTerm::Apply {
            operator,
            arg,
            plural,
        } if operator == NOT => match *arg {
            LcsTerm::Apply {
                operator: inner,
                arg: inner_arg,
                ..
            } if inner == NOT => *inner_arg,
            arg => LcsTerm::Apply {
                operator,
                arg: Box::new(arg),
                plural,
            },
        },
        LcsTerm::And(items) => {
            let mut flat = Vec::with_capacity(items.len());
            for item in items {
                match item {
                    LcsTerm::And(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            single_or(flat, LcsTerm::And)
        }
        LcsTerm::Or(items) => {
            let outer_weighted = items.iter().any(|d| d.weight.is_some());
            let mut flat = Vec::with_capacity(items.len());
            for item in items {
                match item.term {
                    LcsTerm::Or(inner)
                        if inner.iter().any(|d| d.weight.is_some()) == outer_weighted =>
                    {
                        for d in inner {
                            let weight = match (item.weight, d.weight) {
                                (Some(a), Some(b)) => Weight::new(
                                    a.ratio().numer() * b.ratio().numer(),
                                    a.ratio().denom() * b.ratio().denom(),
                                ),
                                _ => None,
                            };
                            flat.push(Disjunct {
                                term: d.term,
                                weight,
                            });
                        }
                    }
                    term => flat.push(Disjunct {
                        term,
                        weight: item.weight,
                    }),
                }
            }
            if flat.len() == 1 && flat[0].weight.is_none() {
                flat.pop().unwrap().term
            } else {
                LcsTerm::Or(flat)
            }
        }
        other => other,
    }
}

fn single_or(mut items: Vec<LcsTerm>, wrap: fn(Vec<LcsTerm>) -> LcsTerm) -> LcsTerm {
    if items.len() == 1 {
        items.pop().unwrap()
    } else {
        wrap(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> LcsTerm {
        LcsTerm::entity(s)
    }

    #[test]
    fn and_flattens() {
        let t = LcsTerm::And(vec![e("a"), LcsTerm::And(vec![e("b"), e("c")])]);
        assert_eq!(t.normalize(), LcsTerm::And(vec![e("a"), e("b"), e("c")]));
    }

    #[test]
    fn double_negation_cancels() {
        let t = LcsTerm::negation(LcsTerm::negation(LcsTerm::state("torn")));
        assert_eq!(t.normalize(), LcsTerm::state("torn"));
        let triple =
            LcsTerm::negation(LcsTerm::negation(LcsTerm::negation(LcsTerm::state("torn"))));
        assert_eq!(
            triple.normalize(),
            LcsTerm::negation(LcsTerm::state("torn"))
        );
    }

    #[test]
    fn are_becomes_plural_is() {
        match LcsTerm::apply(ARE, e("faucets")) {
            LcsTerm::Apply {
                operator, plural, ..
            } => {
                assert_eq!(operator, IS);
                assert!(plural);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn and_order_is_significant() {
        // every ordered pair of two distinct conjuncts
        let atoms = [e("a"), e("b")];
        for i in 0..2 {
            for j in 0..2 {
                let lhs = LcsTerm::And(vec![atoms[i].clone(), atoms[1 - i].clone()]);
                let rhs = LcsTerm::And(vec![atoms[j].clone(), atoms[1 - j].clone()]);
                assert_eq!(lhs.equal(&rhs), i == j);
            }
        }
    }

    #[test]
    fn weighted_or_nested_in_weighted_multiplies() {
        let half = Weight::new(1, 2).unwrap();
        let inner = LcsTerm::Or(vec![
            Disjunct::weighted(e("b"), half),
            Disjunct::weighted(e("c"), half),
        ]);
        let t = LcsTerm::Or(vec![
            Disjunct::weighted(e("a"), half),
            Disjunct::weighted(inner, half),
        ]);
        let LcsTerm::Or(items) = t.normalize() else {
            panic!()
        };
        let weights: Vec<_> = items
            .iter()
            .map(|d| d.weight.unwrap().to_string())
            .collect();
        assert_eq!(weights, ["0.5", "0.25", "0.25"]);
    }

    #[test]
    fn substitute_policies() {
        let t = LcsTerm::cause(LcsTerm::var("x"), LcsTerm::state("s"));
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), "m".to_string());
        b.insert("q".to_string(), "z".to_string());
        assert_eq!(
            t.substitute(&b).unwrap(),
            LcsTerm::cause(e("m"), LcsTerm::state("s"))
        );
        assert_eq!(
            t.substitute_with(&b, UnknownBindings::Reject),
            Err(LcsError::UnknownBinding("q".into()))
        );
    }
}
