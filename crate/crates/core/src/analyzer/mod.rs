//! Clause analysis: picks an event template for a clause, checks the slot
//! bindings, splits the object's adjectives into opposed and persisting
//! ones, and builds the event structure together with its LCS' and LCS.
//!
//! Slot filling is fixed: `x` is the subject and `y` the direct object,
//! except that a template with a `z` slot takes the prepositional object as
//! `y` and the direct object as `z`.

mod clause;
mod np;

use std::collections::BTreeMap;

pub use clause::{ClauseDescriptor, ClauseError, PersistenceP, PrepPhrase, Quantifier};
pub use np::{np_mixture, np_state, NpShape, NpState};

use crate::event::{
    build_process, build_transition, Analysis, EventError, EventKind, EventNode, EventType,
    DEFAULT_SUBEVENTS,
};
use crate::lcs::{Disjunct, LcsError, LcsTerm, PredicateAtom, EVERY, IS};
use crate::lexicon::{EventTemplate, Lexeme, Lexicon, PosTag};
use np::{adjective, lexeme, noun, referent};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalyzerError {
    #[error("unknown lexeme `{0}`")]
    UnknownLexeme(String),
    #[error("`{id}` is tagged {tag}, expected {expected}")]
    BadPos {
        id: String,
        tag: PosTag,
        expected: &'static str,
    },
    #[error("`{lexeme}` cannot fill slot {variable} of {template}")]
    BindingRejected {
        template: String,
        variable: String,
        lexeme: String,
    },
    #[error("no event template fits `{0}`")]
    NoTemplate(String),
    #[error("several templates fit equally well: {}", .0.join(", "))]
    AmbiguousTemplate(Vec<String>),
    #[error("`{0}` declares no result state to shift to")]
    NotShiftEligible(String),
    #[error("slot {variable} of {template} has no filler in the clause")]
    UnfilledSlot { template: String, variable: String },
    #[error(transparent)]
    Event(#[from] EventError),
    #[error(transparent)]
    Lcs(#[from] LcsError),
}

impl AnalyzerError {
    pub(crate) fn bad_pos(l: &Lexeme, expected: &'static str) -> Self {
        AnalyzerError::BadPos {
            id: l.id.clone(),
            tag: l.pos,
            expected,
        }
    }

    /// Variant name.
    pub fn name(&self) -> &'static str {
        match self {
            AnalyzerError::UnknownLexeme(_) => "UnknownLexeme",
            AnalyzerError::BadPos { .. } => "BadPos",
            AnalyzerError::BindingRejected { .. } => "BindingRejected",
            AnalyzerError::NoTemplate(_) => "NoTemplate",
            AnalyzerError::AmbiguousTemplate(_) => "AmbiguousTemplate",
            AnalyzerError::NotShiftEligible(_) => "NotShiftEligible",
            AnalyzerError::UnfilledSlot { .. } => "UnfilledSlot",
            AnalyzerError::Event(_) => "EventError",
            AnalyzerError::Lcs(_) => "LcsError",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Likelihood used for uncertain persistence when the clause gives none.
    pub persistence_p: PersistenceP,
    /// How many subevents a process is drawn with.
    pub subevents: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            persistence_p: PersistenceP::default(),
            subevents: DEFAULT_SUBEVENTS,
        }
    }
}

/// What a clause is about to become before a template is fixed: the lexeme
/// supplying the result state, that state, and the event type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intent {
    pub source: String,
    pub result_adjective: Option<String>,
    pub etype: EventType,
    pub shifted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Opposition {
    pub opposed: Vec<String>,
    pub persisted: Vec<String>,
}

/// Splits `adjectives` by whether they oppose the result state of `verb`.
/// `verb` may also be a result adverb.
pub fn detect_opposition(
    lex: &Lexicon,
    verb: &str,
    adjectives: &[String],
) -> Result<Opposition, AnalyzerError> {
    let result = lex
        .result_adjective(verb)
        .map_err(|_| AnalyzerError::UnknownLexeme(verb.to_string()))?;
    let mut split = Opposition::default();
    for adj in adjectives {
        lexeme(lex, adj)?;
        let opposed = match result {
            Some(r) => lex
                .opposed(r, adj)
                .map_err(|_| AnalyzerError::UnknownLexeme(adj.clone()))?,
            None => false,
        };
        if opposed {
            split.opposed.push(adj.clone());
        } else {
            split.persisted.push(adj.clone());
        }
    }
    Ok(split)
}

fn candidates<'a>(lex: &'a Lexicon, adjective: &str) -> Vec<&'a EventTemplate> {
    let Some(adj) = lex.lexeme(adjective) else {
        return Vec::new();
    };
    let prefix = format!("{}-", adj.spelling);
    lex.templates()
        .filter(|t| t.id.starts_with(&prefix) && t.id.contains("state"))
        .collect()
}

fn mentions_pp(t: &EventTemplate, lex: &Lexicon, clause: &ClauseDescriptor) -> bool {
    let Some(pp) = &clause.pp else { return false };
    let Some(obj) = lex.lexeme(&pp.object) else {
        return false;
    };
    t.id.split('-').any(|part| part == obj.spelling)
}

fn narrow(pool: Vec<&EventTemplate>, keep: impl Fn(&EventTemplate) -> bool) -> Vec<&EventTemplate> {
    let (kept, rest): (Vec<_>, Vec<_>) = pool.into_iter().partition(|t| keep(t));
    if kept.is_empty() {
        rest
    } else {
        kept
    }
}

/// Template choice for a clause whose result state is `adjective`.
fn select_for<'a>(
    lex: &'a Lexicon,
    adjective: &str,
    clause: &ClauseDescriptor,
    verb: &str,
) -> Result<&'a EventTemplate, AnalyzerError> {
    let every = clause.quantifier == Some(Quantifier::Every);
    let pool = candidates(lex, adjective);
    let pool = narrow(pool, |t| t.mentions_operator(EVERY) == every);
    let pool = narrow(pool, |t| mentions_pp(t, lex, clause) == clause.pp.is_some());
    let Some(lowest) = pool.iter().map(|t| t.ordinal()).min() else {
        return Err(AnalyzerError::NoTemplate(verb.to_string()));
    };
    let best: Vec<_> = pool.into_iter().filter(|t| t.ordinal() == lowest).collect();
    match best.as_slice() {
        [one] => Ok(one),
        many => Err(AnalyzerError::AmbiguousTemplate(
            many.iter().map(|t| t.id.clone()).collect(),
        )),
    }
}

/// The verb's own reading, before any adverbial.
pub fn base_intent(lex: &Lexicon, clause: &ClauseDescriptor) -> Result<Intent, AnalyzerError> {
    let verb = lexeme(lex, &clause.verb)?;
    if !verb.pos.is_verb() {
        return Err(AnalyzerError::bad_pos(verb, "VB, VBD or VBG"));
    }
    let result = lex
        .result_adjective(&verb.id)
        .map_err(|_| AnalyzerError::UnknownLexeme(verb.id.clone()))?
        .map(str::to_string);
    let etype = match &result {
        Some(adj) => match select_for(lex, adj, clause, &verb.id) {
            Ok(t) => t.etype,
            Err(AnalyzerError::NoTemplate(_)) => EventType::PROCESS,
            Err(e) => return Err(e),
        },
        None => EventType::PROCESS,
    };
    Ok(Intent {
        source: verb.id.clone(),
        result_adjective: result,
        etype,
        shifted: false,
    })
}

/// A result adverb turns a process into an accomplishment and replaces
/// the result state with its own.
pub fn apply_adverbial_shift(
    lex: &Lexicon,
    base: &Intent,
    adv: &str,
) -> Result<Intent, AnalyzerError> {
    let l = lexeme(lex, adv)?;
    if l.pos != PosTag::RB {
        return Err(AnalyzerError::NotShiftEligible(adv.to_string()));
    }
    let Some(state) = lex.result_adjective(adv).ok().flatten() else {
        return Err(AnalyzerError::NotShiftEligible(adv.to_string()));
    };
    let etype = if base.etype.is_transition() {
        base.etype
    } else {
        EventType::ACCOMPLISHMENT
    };
    Ok(Intent {
        source: adv.to_string(),
        result_adjective: Some(state.to_string()),
        etype,
        shifted: true,
    })
}

fn intent(lex: &Lexicon, clause: &ClauseDescriptor) -> Result<Intent, AnalyzerError> {
    let base = base_intent(lex, clause)?;
    match &clause.result_adverbial {
        Some(adv) => apply_adverbial_shift(lex, &base, adv),
        None => Ok(base),
    }
}

fn select(
    lex: &Lexicon,
    clause: &ClauseDescriptor,
) -> Result<(Intent, EventTemplate), AnalyzerError> {
    let intent = intent(lex, clause)?;
    let adj = intent
        .result_adjective
        .as_deref()
        .ok_or_else(|| AnalyzerError::NoTemplate(clause.verb.clone()))?;
    let template = select_for(lex, adj, clause, &clause.verb)?.clone();
    Ok((intent, template))
}

/// Id of the template `analyze` would use.
pub fn select_template(lex: &Lexicon, clause: &ClauseDescriptor) -> Result<String, AnalyzerError> {
    select(lex, clause).map(|(_, t)| t.id)
}

/// Replaces the conjunct `[IS [y <state>]]` of `lcs` with
/// `[IS [y <state>] : p | IS [y [NOT <state>]] : 1-p]`. With `p = 1` the
/// term is returned unchanged.
pub fn persistence_variant(lcs: &LcsTerm, state: &str, p: PersistenceP) -> LcsTerm {
    let w = p.weight();
    if w.is_one() {
        return lcs.clone();
    }
    let rewrite = |t: &LcsTerm| -> Option<LcsTerm> {
        let LcsTerm::Apply { operator, arg, .. } = t else {
            return None;
        };
        let LcsTerm::Attribution { subject, state: s } = &**arg else {
            return None;
        };
        if operator != IS || **s != LcsTerm::state(state) {
            return None;
        }
        let negated = LcsTerm::apply(
            IS,
            LcsTerm::attribution(
                (**subject).clone(),
                LcsTerm::negation(LcsTerm::state(state)),
            ),
        );
        Some(LcsTerm::Or(vec![
            Disjunct::weighted(t.clone(), w),
            Disjunct::weighted(negated, w.complement()),
        ]))
    };
    match lcs {
        LcsTerm::And(parts) => LcsTerm::And(
            parts
                .iter()
                .map(|t| rewrite(t).unwrap_or_else(|| t.clone()))
                .collect(),
        ),
        t => rewrite(t).unwrap_or_else(|| t.clone()),
    }
}

fn operand(lex: &Lexicon, clause: &ClauseDescriptor) -> Result<String, AnalyzerError> {
    let obj = referent(lex, &clause.object)?;
    Ok(match clause.quantifier {
        Some(Quantifier::Every) => format!("every({obj})"),
        None => obj,
    })
}

/// Predicates of the states brought about inside every `CAUSE`.
fn result_atoms(lcs: &LcsTerm) -> Vec<PredicateAtom> {
    let mut atoms = Vec::new();
    lcs.walk(&mut |t| {
        if let LcsTerm::Cause { effect, .. } = t {
            effect.walk(&mut |e| {
                if let LcsTerm::Attribution { subject, state } = e {
                    if let (LcsTerm::Entity(s), LcsTerm::State(st)) = (&**subject, &**state) {
                        atoms.push(PredicateAtom::unary(st.clone(), s.clone()));
                    }
                }
            });
        }
    });
    atoms
}

/// Lower-cased operators of agentive actions, e.g. `comfort` for
/// `[f [COMFORT ...]]`.
fn action_names(lcs: &LcsTerm) -> Vec<String> {
    let mut names = Vec::new();
    lcs.walk(&mut |t| {
        if let LcsTerm::Agentive { action, .. } = t {
            if let LcsTerm::Apply { operator, .. } = &**action {
                names.push(operator.to_lowercase());
            }
        }
    });
    names
}

fn bind(
    lex: &Lexicon,
    template: &EventTemplate,
    clause: &ClauseDescriptor,
) -> Result<BTreeMap<String, String>, AnalyzerError> {
    let slots = template.lcs.free_vars();
    let mixture = slots.contains("z") && clause.pp.is_some();
    let mut bindings = BTreeMap::new();
    for var in &slots {
        let filler = match (var.as_str(), mixture) {
            ("x", _) => Some(&clause.subject),
            ("y", true) => clause.pp.as_ref().map(|pp| &pp.object),
            ("y", false) | ("z", true) => Some(&clause.object),
            _ => None,
        };
        let filler = filler.ok_or_else(|| AnalyzerError::UnfilledSlot {
            template: template.id.clone(),
            variable: var.clone(),
        })?;
        bindings.insert(var.clone(), filler.clone());
    }
    check_bindings(lex, &template.id, &bindings)?;
    Ok(bindings)
}

/// Fails on the first binding the lexicon does not allow.
pub fn check_bindings(
    lex: &Lexicon,
    template: &str,
    bindings: &BTreeMap<String, String>,
) -> Result<(), AnalyzerError> {
    for (var, id) in bindings {
        let ok = lex
            .can_bind(template, var, id)
            .map_err(|_| AnalyzerError::UnknownLexeme(id.clone()))?;
        if !ok {
            return Err(AnalyzerError::BindingRejected {
                template: template.to_string(),
                variable: var.clone(),
                lexeme: id.clone(),
            });
        }
    }
    Ok(())
}

fn check_clause(lex: &Lexicon, clause: &ClauseDescriptor) -> Result<(), AnalyzerError> {
    noun(lex, &clause.subject)?;
    noun(lex, &clause.object)?;
    for adj in &clause.adjectives {
        adjective(lex, adj)?;
    }
    if let Some(pp) = &clause.pp {
        let prep = lexeme(lex, &pp.preposition)?;
        if prep.pos != PosTag::IN {
            return Err(AnalyzerError::bad_pos(prep, "IN"));
        }
        noun(lex, &pp.object)?;
    }
    if let Some(adv) = &clause.result_adverbial {
        lexeme(lex, adv)?;
    }
    Ok(())
}

pub fn analyze(lex: &Lexicon, clause: &ClauseDescriptor) -> Result<Analysis, AnalyzerError> {
    analyze_with(lex, clause, &Options::default())
}

pub fn analyze_with(
    lex: &Lexicon,
    clause: &ClauseDescriptor,
    options: &Options,
) -> Result<Analysis, AnalyzerError> {
    check_clause(lex, clause)?;
    let (intent, template) = select(lex, clause)?;
    let bindings = bind(lex, &template, clause)?;
    let symbols = bindings
        .iter()
        .map(|(var, id)| Ok((var.clone(), referent(lex, id)?)))
        .collect::<Result<BTreeMap<_, _>, AnalyzerError>>()?;
    let ground = template.lcs.substitute(&symbols)?;

    let split = detect_opposition(lex, &intent.source, &clause.adjectives)?;
    let subj = referent(lex, &clause.subject)?;
    let obj = referent(lex, &clause.object)?;
    let spelling = |id: &str| {
        lex.lexeme(id)
            .map(|l| l.spelling.clone())
            .unwrap_or_default()
    };
    let property = |id: &str| PredicateAtom::unary(spelling(id), obj.clone());

    let mut process = vec![PredicateAtom::binary("act", subj, operand(lex, clause)?)];
    let etype = if intent.shifted && !template.etype.is_transition() {
        intent.etype
    } else {
        template.etype
    };

    let (es, lcs) = match etype.kind() {
        EventKind::Transition => {
            let certain = clause.assume_persistence;
            let mut uncertain = Vec::new();
            for adj in &clause.adjectives {
                if certain || split.opposed.contains(adj) {
                    process.push(property(adj));
                } else {
                    uncertain.push(property(adj));
                }
            }
            let persisted: Vec<_> = if certain {
                split.persisted.iter().map(|a| property(a)).collect()
            } else {
                Vec::new()
            };
            let mut es = build_transition(
                &process,
                &result_atoms(&ground),
                &persisted,
                etype.subtype(),
            )?;
            es.children[0].predicates.extend(uncertain);

            let mut parts = vec![ground];
            for adj in &split.persisted {
                let np = np_state(lex, &clause.object, std::slice::from_ref(adj))?;
                parts.push(np.term);
            }
            let mut lcs = LcsTerm::And(parts).normalize();
            if !certain {
                let p = clause.persistence_p.unwrap_or(options.persistence_p);
                for adj in &split.persisted {
                    lcs = persistence_variant(&lcs, &spelling(adj), p);
                }
            }
            (es, lcs)
        }
        EventKind::Process => {
            for adj in &clause.adjectives {
                process.push(property(adj));
            }
            for name in action_names(&ground) {
                process.push(PredicateAtom::unary(name, obj.clone()));
            }
            (build_process(&process, options.subevents)?, ground)
        }
        EventKind::State => {
            let atoms = result_atoms(&ground);
            let es = EventNode {
                etype: EventType::STATE,
                predicates: atoms,
                children: Vec::new(),
                subevent_count: None,
            };
            (es, ground)
        }
    };
    es.check()?;

    let analysis = Analysis {
        lcs_prime_process: match es.etype.kind() {
            EventKind::Transition => es.children[0].predicates.clone(),
            EventKind::Process => es.predicates.clone(),
            EventKind::State => Vec::new(),
        },
        lcs_prime_state: match es.etype.kind() {
            EventKind::Transition => es.children[1].predicates.clone(),
            EventKind::State => es.predicates.clone(),
            EventKind::Process => Vec::new(),
        },
        es,
        lcs,
        template_id: template.id.clone(),
        bindings,
    };
    check_bindings(lex, &analysis.template_id, &analysis.bindings)?;
    Ok(analysis)
}

#[cfg(test)]
mod tests;
