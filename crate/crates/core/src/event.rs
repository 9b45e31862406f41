//! Event types and event-structure trees.
//!
//! A transition `T` has a process child `P` (its preconditions and the act
//! itself) and a state child `S` (the culmination). The predicate lists on
//! each node are the predicate-logic annotation of that subevent.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::lcs::{conjunction, LcsTerm, PredicateAtom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventKind {
    State,
    Process,
    Transition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransitionSubtype {
    Achievement,
    Accomplishment,
}

/// `S`, `P`, `T`, `T_ACH` or `T_ACC`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventType {
    kind: EventKind,
    subtype: Option<TransitionSubtype>,
}

impl EventType {
    pub const STATE: EventType = EventType {
        kind: EventKind::State,
        subtype: None,
    };
    pub const PROCESS: EventType = EventType {
        kind: EventKind::Process,
        subtype: None,
    };
    pub const TRANSITION: EventType = EventType {
        kind: EventKind::Transition,
        subtype: None,
    };
    pub const ACHIEVEMENT: EventType = EventType {
        kind: EventKind::Transition,
        subtype: Some(TransitionSubtype::Achievement),
    };
    pub const ACCOMPLISHMENT: EventType = EventType {
        kind: EventKind::Transition,
        subtype: Some(TransitionSubtype::Accomplishment),
    };

    /// `None` if a subtype is given for a non-transition.
    pub fn new(kind: EventKind, subtype: Option<TransitionSubtype>) -> Option<EventType> {
        if subtype.is_some() && kind != EventKind::Transition {
            return None;
        }
        Some(EventType { kind, subtype })
    }

    pub fn transition(subtype: Option<TransitionSubtype>) -> EventType {
        EventType {
            kind: EventKind::Transition,
            subtype,
        }
    }

    pub fn kind(self) -> EventKind {
        self.kind
    }

    pub fn subtype(self) -> Option<TransitionSubtype> {
        self.subtype
    }

    pub fn is_transition(self) -> bool {
        self.kind == EventKind::Transition
    }

    /// Single-letter label used in trees.
    pub fn label(self) -> &'static str {
        match self.kind {
            EventKind::State => "S",
            EventKind::Process => "P",
            EventKind::Transition => "T",
        }
    }
}

impl fmt::Display for EventType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())?;
        match self.subtype {
            Some(TransitionSubtype::Achievement) => f.write_str("_ACH"),
            Some(TransitionSubtype::Accomplishment) => f.write_str("_ACC"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown event type `{0}`, expected one of S, P, T, T_ACH, T_ACC")]
pub struct UnknownEventType(pub String);

impl FromStr for EventType {
    type Err = UnknownEventType;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "S" => EventType::STATE,
            "P" => EventType::PROCESS,
            "T" => EventType::TRANSITION,
            "T_ACH" => EventType::ACHIEVEMENT,
            "T_ACC" => EventType::ACCOMPLISHMENT,
            other => return Err(UnknownEventType(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EventError {
    #[error("a transition needs at least one result-state predicate")]
    EmptyResultState,
    #[error("an event needs at least one predicate")]
    EmptyPredicates,
    #[error("subevent count must be at least 1")]
    NoSubevents,
    #[error("malformed event tree: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventNode {
    pub etype: EventType,
    pub predicates: Vec<PredicateAtom>,
    pub children: Vec<EventNode>,
    /// Number of subevents of a process, drawn as `e1.....en` when above one.
    pub subevent_count: Option<u32>,
}

pub const DEFAULT_SUBEVENTS: u32 = 2;

fn push_unique(into: &mut Vec<PredicateAtom>, atom: &PredicateAtom) {
    if !into.contains(atom) {
        into.push(atom.clone());
    }
}

/// Builds `T -> (P, S)`.
///
/// The process node carries `process_preds` followed by any `persisted_preds`
/// not already present. The state node carries the negation of every positive
/// unary process predicate that does not persist, then the result predicates,
/// then the persisted ones.
pub fn build_transition(
    process_preds: &[PredicateAtom],
    result_state_preds: &[PredicateAtom],
    persisted_preds: &[PredicateAtom],
    subtype: Option<TransitionSubtype>,
) -> Result<EventNode, EventError> {
    if result_state_preds.is_empty() {
        return Err(EventError::EmptyResultState);
    }
    if process_preds.is_empty() {
        return Err(EventError::EmptyPredicates);
    }
    let mut process = Vec::new();
    for atom in process_preds.iter().chain(persisted_preds) {
        push_unique(&mut process, atom);
    }
    let mut state = Vec::new();
    for atom in process_preds {
        if atom.args.len() == 1 && !atom.is_negative() && !persisted_preds.contains(atom) {
            push_unique(&mut state, &atom.negate());
        }
    }
    for atom in result_state_preds.iter().chain(persisted_preds) {
        push_unique(&mut state, atom);
    }
    Ok(EventNode {
        etype: EventType::transition(subtype),
        predicates: Vec::new(),
        children: vec![
            EventNode {
                etype: EventType::PROCESS,
                predicates: process,
                children: Vec::new(),
                subevent_count: None,
            },
            EventNode {
                etype: EventType::STATE,
                predicates: state,
                children: Vec::new(),
                subevent_count: None,
            },
        ],
        subevent_count: None,
    })
}

/// A leaf process of `n_subevents` subevents.
pub fn build_process(preds: &[PredicateAtom], n_subevents: u32) -> Result<EventNode, EventError> {
    if preds.is_empty() {
        return Err(EventError::EmptyPredicates);
    }
    if n_subevents == 0 {
        return Err(EventError::NoSubevents);
    }
    let mut predicates = Vec::new();
    for atom in preds {
        push_unique(&mut predicates, atom);
    }
    Ok(EventNode {
        etype: EventType::PROCESS,
        predicates,
        children: Vec::new(),
        subevent_count: Some(n_subevents),
    })
}

pub fn negate(atom: &PredicateAtom) -> PredicateAtom {
    atom.negate()
}

impl EventNode {
    pub fn process_child(&self) -> Option<&EventNode> {
        self.children
            .iter()
            .find(|c| c.etype.kind() == EventKind::Process)
    }

    pub fn state_child(&self) -> Option<&EventNode> {
        self.children
            .iter()
            .find(|c| c.etype.kind() == EventKind::State)
    }

    /// Checks the tree-shape and culmination invariants.
    pub fn check(&self) -> Result<(), EventError> {
        match self.etype.kind() {
            EventKind::Transition => {
                let [p, s] = self.children.as_slice() else {
                    return Err(EventError::Malformed(
                        "transition needs exactly two children".into(),
                    ));
                };
                if p.etype.kind() != EventKind::Process || s.etype.kind() != EventKind::State {
                    return Err(EventError::Malformed(
                        "transition children must be P then S".into(),
                    ));
                }
                for atom in s.predicates.iter().filter(|a| a.is_negative()) {
                    if !p.predicates.contains(&atom.negate()) {
                        return Err(EventError::Malformed(format!(
                            "{atom} in the state has no opposed predicate in the process"
                        )));
                    }
                }
                p.check()?;
                s.check()
            }
            EventKind::Process | EventKind::State => {
                if !self.children.is_empty() {
                    return Err(EventError::Malformed(format!(
                        "{} node must be a leaf",
                        self.etype.label()
                    )));
                }
                if self.etype.kind() == EventKind::State && self.subevent_count.is_some() {
                    return Err(EventError::Malformed("states have no subevents".into()));
                }
                Ok(())
            }
        }
    }
}

/// Event structure plus its predicate annotation and the ground LCS.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub es: EventNode,
    pub lcs: LcsTerm,
    pub lcs_prime_process: Vec<PredicateAtom>,
    /// Empty for pure processes.
    pub lcs_prime_state: Vec<PredicateAtom>,
    pub template_id: String,
    pub bindings: BTreeMap<String, String>,
}

impl Analysis {
    pub fn kind(&self) -> EventKind {
        self.es.etype.kind()
    }
}

const GAP: usize = 3;

/// Deterministic ASCII drawing of an event tree.
pub fn render_ascii(node: &EventNode) -> String {
    let lines = match node.etype.kind() {
        EventKind::Transition => block(node),
        EventKind::Process if node.subevent_count.unwrap_or(1) > 1 => block(node),
        _ => vec![
            node.etype.label().to_string(),
            conjunction(&node.predicates),
        ],
    };
    let mut out = String::new();
    for line in lines {
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn centered(lines: &[String], width: usize) -> Vec<String> {
    lines
        .iter()
        .map(|l| {
            let pad = (width - l.chars().count()) / 2;
            format!("{}{}", " ".repeat(pad), l)
        })
        .collect()
}

fn width(lines: &[String]) -> usize {
    lines.iter().map(|l| l.chars().count()).max().unwrap_or(0)
}

// Lines of one subtree, centered on a common axis.
fn block(node: &EventNode) -> Vec<String> {
    let label = node.etype.label().to_string();
    let mut lines = vec![label];
    match node.etype.kind() {
        EventKind::Transition => {
            let left = node.children.first().map(block).unwrap_or_default();
            let right = node.children.get(1).map(block).unwrap_or_default();
            let (wl, wr) = (width(&left).max(1), width(&right).max(1));
            let cl = (wl - 1) / 2;
            let cr = wl + GAP + (wr - 1) / 2;
            let mid = (cl + cr) / 2;
            let total = wl + GAP + wr;
            let mut header = vec![format!("{}T", " ".repeat(mid))];
            for k in 1..=2usize {
                let mut row = vec![' '; total];
                row[mid.saturating_sub(2 * k).max(cl)] = '/';
                row[(mid + 2 * k).min(cr)] = '\\';
                header.push(row.into_iter().collect());
            }
            let rows = left.len().max(right.len());
            for i in 0..rows {
                let l = left.get(i).map(String::as_str).unwrap_or("");
                let r = right.get(i).map(String::as_str).unwrap_or("");
                let pad = wl + GAP - l.chars().count();
                header.push(format!("{l}{}{r}", " ".repeat(pad)));
            }
            return header;
        }
        EventKind::Process => {
            if node.subevent_count.unwrap_or(1) > 1 {
                lines.push("/ \\".into());
                lines.push("/   \\".into());
                lines.push("e1.....en".into());
            }
            lines.push("|".into());
            lines.push(conjunction(&node.predicates));
        }
        EventKind::State => {
            let (neg, pos): (Vec<_>, Vec<_>) = node
                .predicates
                .iter()
                .cloned()
                .partition(PredicateAtom::is_negative);
            for group in [neg, pos] {
                if !group.is_empty() {
                    lines.push("|".into());
                    lines.push(conjunction(&group));
                }
            }
        }
    }
    let w = width(&lines);
    centered(&lines, w)
}
