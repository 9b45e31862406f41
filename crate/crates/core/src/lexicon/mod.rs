//! The computational lexicon: lexeme feature structures, event templates,
//! capability roles, sparse lexeme/template overrides and the semantic
//! relation pairs used to find oppositions.

mod lexf;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::event::EventType;
use crate::lcs::{is_entity_id, LcsTerm, Syntax};

pub use lexf::{load, load_path, read, save, LoadError, HEADER};

/// The accepted subset of Penn Treebank tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosTag {
    VB,
    VBD,
    VBG,
    NN,
    NNP,
    JJ,
    RB,
    DT,
    IN,
}

impl PosTag {
    pub const ALL: [PosTag; 9] = [
        PosTag::VB,
        PosTag::VBD,
        PosTag::VBG,
        PosTag::NN,
        PosTag::NNP,
        PosTag::JJ,
        PosTag::RB,
        PosTag::DT,
        PosTag::IN,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::VB => "VB",
            PosTag::VBD => "VBD",
            PosTag::VBG => "VBG",
            PosTag::NN => "NN",
            PosTag::NNP => "NNP",
            PosTag::JJ => "JJ",
            PosTag::RB => "RB",
            PosTag::DT => "DT",
            PosTag::IN => "IN",
        }
    }

    pub fn is_verb(self) -> bool {
        matches!(self, PosTag::VB | PosTag::VBD | PosTag::VBG)
    }

    pub fn is_noun(self) -> bool {
        matches!(self, PosTag::NN | PosTag::NNP)
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| s.to_string())
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `name{spelling, sense, /tag}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexeme {
    pub id: String,
    pub spelling: String,
    pub sense: String,
    pub pos: PosTag,
}

impl Lexeme {
    pub fn new(
        id: impl Into<String>,
        spelling: impl Into<String>,
        sense: impl Into<String>,
        pos: PosTag,
    ) -> Self {
        Lexeme {
            id: id.into(),
            spelling: spelling.into(),
            sense: sense.into(),
            pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventTemplate {
    pub id: String,
    pub etype: EventType,
    pub lcs: LcsTerm,
    /// Declared capability requirements. Variables without an entry require nothing.
    pub requirements: BTreeMap<String, BTreeSet<String>>,
}

impl EventTemplate {
    pub fn new(id: impl Into<String>, etype: EventType, lcs: LcsTerm) -> Self {
        EventTemplate {
            id: id.into(),
            etype,
            lcs,
            requirements: BTreeMap::new(),
        }
    }

    /// Every free variable with its required capabilities.
    pub fn slots(&self) -> BTreeMap<String, BTreeSet<String>> {
        self.lcs
            .free_vars()
            .into_iter()
            .map(|v| {
                let caps = self.requirements.get(&v).cloned().unwrap_or_default();
                (v, caps)
            })
            .collect()
    }

    /// Numeric suffix of the id (`mended-state2` -> 2); 0 when absent.
    pub fn ordinal(&self) -> u64 {
        let digits: String = self
            .id
            .chars()
            .rev()
            .take_while(char::is_ascii_digit)
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect();
        digits.parse().unwrap_or(0)
    }

    pub fn mentions_operator(&self, op: &str) -> bool {
        let mut found = false;
        self.lcs.walk(&mut |t| {
            if let LcsTerm::Apply { operator, .. } = t {
                found |= operator == op;
            }
        });
        found
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Antonym,
    Synonym,
}

impl RelationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::Antonym => "ANTONYM",
            RelationKind::Synonym => "SYNONYM",
        }
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ANTONYM" => Ok(RelationKind::Antonym),
            "SYNONYM" => Ok(RelationKind::Synonym),
            other => Err(other.to_string()),
        }
    }
}

/// A symmetric relation, stored with its ids in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SrmRelation {
    pub kind: RelationKind,
    pub a: String,
    pub b: String,
}

impl SrmRelation {
    pub fn new(kind: RelationKind, a: impl Into<String>, b: impl Into<String>) -> Self {
        let (a, b) = (a.into(), b.into());
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        SrmRelation { kind, a, b }
    }

    pub fn links(&self, x: &str, y: &str) -> bool {
        (self.a == x && self.b == y) || (self.a == y && self.b == x)
    }

    /// The other end of the relation, if `x` is one end.
    pub fn other(&self, x: &str) -> Option<&str> {
        if self.a == x {
            Some(&self.b)
        } else if self.b == x {
            Some(&self.a)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetKey {
    pub template_id: String,
    pub variable: String,
    pub lexeme_id: String,
}

impl LetKey {
    pub fn new(
        template_id: impl Into<String>,
        variable: impl Into<String>,
        lexeme_id: impl Into<String>,
    ) -> Self {
        LetKey {
            template_id: template_id.into(),
            variable: variable.into(),
            lexeme_id: lexeme_id.into(),
        }
    }
}

/// Where a record came from, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Record {
    Operator(String),
    Lexeme(String),
    Template(String),
    Slot(String, String),
    Cap(String),
    Let(LetKey),
    Rel(SrmRelation),
    Result(String),
    Referent(String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LexiconError {
    #[error("{}syntax error at column {column}: {message}", at(*line))]
    Syntax {
        line: Option<usize>,
        column: usize,
        message: String,
    },
    #[error("{}reference to unknown {what} `{id}`", at(*line))]
    DanglingReference {
        line: Option<usize>,
        what: &'static str,
        id: String,
    },
    #[error("{}duplicate {what} `{id}`", at(*line))]
    DuplicateId {
        line: Option<usize>,
        what: &'static str,
        id: String,
    },
    #[error("{}bad part of speech `{tag}` for `{id}`: {expected}", at(*line))]
    BadPos {
        line: Option<usize>,
        id: String,
        tag: String,
        expected: String,
    },
    #[error("{}template `{template}` has no variable `{variable}`", at(*line))]
    SlotMismatch {
        line: Option<usize>,
        template: String,
        variable: String,
    },
    #[error("{}{kind} relation of `{id}` with itself", at(*line))]
    SelfRelation {
        line: Option<usize>,
        kind: &'static str,
        id: String,
    },
}

fn at(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

impl LexiconError {
    pub fn line(&self) -> Option<usize> {
        match self {
            LexiconError::Syntax { line, .. }
            | LexiconError::DanglingReference { line, .. }
            | LexiconError::DuplicateId { line, .. }
            | LexiconError::BadPos { line, .. }
            | LexiconError::SlotMismatch { line, .. }
            | LexiconError::SelfRelation { line, .. } => *line,
        }
    }

    /// Variant name, used as the diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            LexiconError::Syntax { .. } => "SyntaxError",
            LexiconError::DanglingReference { .. } => "DanglingReference",
            LexiconError::DuplicateId { .. } => "DuplicateId",
            LexiconError::BadPos { .. } => "BadPos",
            LexiconError::SlotMismatch { .. } => "SlotMismatch",
            LexiconError::SelfRelation { .. } => "SelfRelation",
        }
    }

    /// The message without the line prefix.
    pub fn message(&self) -> String {
        let full = self.to_string();
        match full.strip_prefix(&at(self.line())) {
            Some(rest) => rest.to_string(),
            None => full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("unknown template `{0}`")]
    UnknownTemplate(String),
    #[error("template `{template}` has no variable `{variable}`")]
    UnknownVariable { template: String, variable: String },
    #[error("unknown lexeme `{0}`")]
    UnknownLexeme(String),
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    operators: BTreeSet<String>,
    lexemes: BTreeMap<String, Lexeme>,
    templates: BTreeMap<String, EventTemplate>,
    capabilities: BTreeMap<String, BTreeSet<String>>,
    let_overrides: BTreeMap<LetKey, bool>,
    relations: BTreeSet<SrmRelation>,
    results: BTreeMap<String, String>,
    referents: BTreeMap<String, String>,
    origin: BTreeMap<Record, usize>,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.operators == other.operators
            && self.lexemes == other.lexemes
            && self.templates == other.templates
            && self.capabilities == other.capabilities
            && self.let_overrides == other.let_overrides
            && self.relations == other.relations
            && self.results == other.results
            && self.referents == other.referents
    }
}

impl Lexicon {
    pub fn new() -> Self {
        Lexicon::default()
    }

    /// Parse context for template expressions: seed operators plus declared ones.
    pub fn syntax(&self) -> Syntax {
        Syntax::with_operators(self.operators.iter().cloned())
    }

    pub fn declared_operators(&self) -> impl Iterator<Item = &str> {
        self.operators.iter().map(String::as_str)
    }

    pub fn lexemes(&self) -> impl Iterator<Item = &Lexeme> {
        self.lexemes.values()
    }

    pub fn lexeme(&self, id: &str) -> Option<&Lexeme> {
        self.lexemes.get(id)
    }

    pub fn templates(&self) -> impl Iterator<Item = &EventTemplate> {
        self.templates.values()
    }

    pub fn template(&self, id: &str) -> Option<&EventTemplate> {
        self.templates.get(id)
    }

    pub fn capabilities_of(&self, lexeme_id: &str) -> Option<&BTreeSet<String>> {
        self.capabilities.get(lexeme_id)
    }

    pub fn capability_assignments(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.capabilities.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn let_overrides(&self) -> impl Iterator<Item = (&LetKey, bool)> {
        self.let_overrides.iter().map(|(k, v)| (k, *v))
    }

    pub fn relations(&self) -> impl Iterator<Item = &SrmRelation> {
        self.relations.iter()
    }

    pub fn result_links(&self) -> impl Iterator<Item = (&str, &str)> {
        self.results.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn referent_links(&self) -> impl Iterator<Item = (&str, &str)> {
        self.referents.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
            && self.lexemes.is_empty()
            && self.templates.is_empty()
            && self.capabilities.is_empty()
            && self.let_overrides.is_empty()
            && self.relations.is_empty()
            && self.results.is_empty()
            && self.referents.is_empty()
    }

    // Builders. No validation happens here; see `validate`.

    pub fn add_operator(&mut self, op: impl Into<String>) {
        self.operators.insert(op.into());
    }

    /// Returns the lexeme previously stored under the same id.
    pub fn insert_lexeme(&mut self, lexeme: Lexeme) -> Option<Lexeme> {
        self.lexemes.insert(lexeme.id.clone(), lexeme)
    }

    pub fn insert_template(&mut self, template: EventTemplate) -> Option<EventTemplate> {
        self.templates.insert(template.id.clone(), template)
    }

    /// Adds a slot requirement; the template must already be present.
    pub fn require(
        &mut self,
        template_id: &str,
        variable: &str,
        caps: impl IntoIterator<Item = String>,
    ) -> bool {
        match self.templates.get_mut(template_id) {
            Some(t) => {
                t.requirements
                    .entry(variable.to_string())
                    .or_default()
                    .extend(caps);
                true
            }
            None => false,
        }
    }

    pub fn grant(&mut self, lexeme_id: impl Into<String>, caps: impl IntoIterator<Item = String>) {
        self.capabilities
            .entry(lexeme_id.into())
            .or_default()
            .extend(caps);
    }

    pub fn set_let(&mut self, key: LetKey, allowed: bool) -> Option<bool> {
        self.let_overrides.insert(key, allowed)
    }

    pub fn relate(&mut self, relation: SrmRelation) -> bool {
        self.relations.insert(relation)
    }

    pub fn set_result(
        &mut self,
        verb_id: impl Into<String>,
        adjective_id: impl Into<String>,
    ) -> Option<String> {
        self.results.insert(verb_id.into(), adjective_id.into())
    }

    pub fn set_referent(
        &mut self,
        lexeme_id: impl Into<String>,
        symbol: impl Into<String>,
    ) -> Option<String> {
        self.referents.insert(lexeme_id.into(), symbol.into())
    }

    pub(crate) fn note_origin(&mut self, record: Record, line: usize) {
        self.origin.entry(record).or_insert(line);
    }

    pub(crate) fn origin(&self, record: &Record) -> Option<usize> {
        self.origin.get(record).copied()
    }

    // Queries.

    fn known_lexeme(&self, id: &str) -> Result<&Lexeme, QueryError> {
        self.lexemes
            .get(id)
            .ok_or_else(|| QueryError::UnknownLexeme(id.to_string()))
    }

    /// Whether `lexeme_id` may fill `variable` of `template_id`. An explicit
    /// override decides when present; otherwise the lexeme must hold every
    /// capability the slot requires.
    pub fn can_bind(
        &self,
        template_id: &str,
        variable: &str,
        lexeme_id: &str,
    ) -> Result<bool, QueryError> {
        let template = self
            .templates
            .get(template_id)
            .ok_or_else(|| QueryError::UnknownTemplate(template_id.to_string()))?;
        let slots = template.slots();
        let required = slots
            .get(variable)
            .ok_or_else(|| QueryError::UnknownVariable {
                template: template_id.to_string(),
                variable: variable.to_string(),
            })?;
        self.known_lexeme(lexeme_id)?;
        if let Some(&allowed) =
            self.let_overrides
                .get(&LetKey::new(template_id, variable, lexeme_id))
        {
            return Ok(allowed);
        }
        let empty = BTreeSet::new();
        let held = self.capabilities.get(lexeme_id).unwrap_or(&empty);
        Ok(required.is_subset(held))
    }

    fn synonyms_of<'a>(&'a self, x: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.relations
            .iter()
            .filter(|r| r.kind == RelationKind::Synonym)
            .filter_map(move |r| r.other(x))
    }

    fn antonyms(&self, a: &str, b: &str) -> bool {
        self.relations
            .iter()
            .any(|r| r.kind == RelationKind::Antonym && r.links(a, b))
    }

    /// Semantic opposition: a direct antonym, or an antonym of a synonym
    /// (one hop, on either side). Symmetric and irreflexive.
    pub fn opposed(&self, a: &str, b: &str) -> Result<bool, QueryError> {
        self.known_lexeme(a)?;
        self.known_lexeme(b)?;
        if a == b {
            return Ok(false);
        }
        if self.antonyms(a, b) {
            return Ok(true);
        }
        let via = |from: &str, to: &str| self.synonyms_of(to).any(|c| self.antonyms(from, c));
        Ok(via(a, b) || via(b, a))
    }

    /// The adjective naming the state a verb (or a result adverb) brings about.
    pub fn result_adjective(&self, verb_id: &str) -> Result<Option<&str>, QueryError> {
        self.known_lexeme(verb_id)?;
        Ok(self.results.get(verb_id).map(String::as_str))
    }

    /// The symbol a lexeme contributes to ground LCS terms: a declared
    /// referent, else the spelling made into an entity id.
    pub fn referent(&self, lexeme_id: &str) -> Result<String, QueryError> {
        let lexeme = self.known_lexeme(lexeme_id)?;
        if let Some(sym) = self.referents.get(lexeme_id) {
            return Ok(sym.clone());
        }
        let derived: String = lexeme
            .spelling
            .trim()
            .to_lowercase()
            .chars()
            .map(|c| if c.is_whitespace() { '-' } else { c })
            .filter(|c| {
                c.is_ascii_lowercase() || c.is_ascii_digit() || matches!(c, '-' | '_' | '^')
            })
            .collect();
        if is_entity_id(&derived) {
            Ok(derived)
        } else {
            Ok(lexeme.id.to_lowercase())
        }
    }

    /// JJ lexemes spelled `spelling`.
    pub fn adjectives_spelled<'a>(
        &'a self,
        spelling: &'a str,
    ) -> impl Iterator<Item = &'a Lexeme> + 'a {
        self.lexemes
            .values()
            .filter(move |l| l.pos == PosTag::JJ && l.spelling == spelling)
    }

    /// All diagnostics, in source order where lines are known.
    pub fn validate(&self) -> Vec<LexiconError> {
        validate::validate(self)
    }
}
