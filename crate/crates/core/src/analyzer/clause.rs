use std::fmt;
use std::str::FromStr;

use crate::lcs::Weight;

/// The only quantifier the lexicon treats specially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    Every,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrepPhrase {
    pub preposition: String,
    pub object: String,
}

/// Likelihood of the persisting branch of an uncertain property.
/// Always in (1/2, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PersistenceP(Weight);

impl PersistenceP {
    pub fn new(w: Weight) -> Result<Self, String> {
        if w.ratio() * 2 > Weight::ONE.ratio() {
            Ok(PersistenceP(w))
        } else {
            Err(format!(
                "persistence likelihood must be in (0.5, 1], got {w}"
            ))
        }
    }

    pub fn weight(self) -> Weight {
        self.0
    }
}

impl Default for PersistenceP {
    fn default() -> Self {
        PersistenceP(Weight::new(4, 5).expect("4/5 is a weight"))
    }
}

impl FromStr for PersistenceP {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let w: Weight = s
            .parse()
            .map_err(|e: crate::lcs::WeightError| e.to_string())?;
        PersistenceP::new(w)
    }
}

impl fmt::Display for PersistenceP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Structured stand-in for a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseDescriptor {
    pub subject: String,
    pub verb: String,
    pub object: String,
    pub adjectives: Vec<String>,
    pub quantifier: Option<Quantifier>,
    pub result_adverbial: Option<String>,
    pub pp: Option<PrepPhrase>,
    pub assume_persistence: bool,
    /// Overrides the configured likelihood for this clause.
    pub persistence_p: Option<PersistenceP>,
}

impl ClauseDescriptor {
    pub fn new(
        subject: impl Into<String>,
        verb: impl Into<String>,
        object: impl Into<String>,
    ) -> Self {
        ClauseDescriptor {
            subject: subject.into(),
            verb: verb.into(),
            object: object.into(),
            adjectives: Vec::new(),
            quantifier: None,
            result_adverbial: None,
            pp: None,
            assume_persistence: true,
            persistence_p: None,
        }
    }

    pub fn with_adjectives<S: Into<String>>(
        mut self,
        adjectives: impl IntoIterator<Item = S>,
    ) -> Self {
        self.adjectives = adjectives.into_iter().map(Into::into).collect();
        self
    }

    pub fn every(mut self) -> Self {
        self.quantifier = Some(Quantifier::Every);
        self
    }

    pub fn with_adverbial(mut self, adv: impl Into<String>) -> Self {
        self.result_adverbial = Some(adv.into());
        self
    }

    pub fn with_pp(mut self, preposition: impl Into<String>, object: impl Into<String>) -> Self {
        self.pp = Some(PrepPhrase {
            preposition: preposition.into(),
            object: object.into(),
        });
        self
    }

    pub fn uncertain(mut self, p: Option<PersistenceP>) -> Self {
        self.assume_persistence = false;
        self.persistence_p = p;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClauseError {
    #[error("clause must start with CLAUSE")]
    MissingKeyword,
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("key `{0}` given twice")]
    DuplicateKey(String),
    #[error("bad value `{value}` for key `{key}`: {reason}")]
    BadValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("expected key=value, found `{0}`")]
    NotAPair(String),
}

impl ClauseError {
    /// The key the error is about, when there is one.
    pub fn key(&self) -> Option<&str> {
        match self {
            ClauseError::UnknownKey(k) | ClauseError::DuplicateKey(k) => Some(k),
            ClauseError::BadValue { key, .. } => Some(key),
            ClauseError::MissingKey(k) => Some(k),
            ClauseError::MissingKeyword | ClauseError::NotAPair(_) => None,
        }
    }
}

fn bad(key: &str, value: &str, reason: &str) -> ClauseError {
    ClauseError::BadValue {
        key: key.into(),
        value: value.into(),
        reason: reason.into(),
    }
}

fn id(key: &str, value: &str) -> Result<String, ClauseError> {
    if value.is_empty() || value.contains(',') || value.contains(':') {
        Err(bad(key, value, "expected one lexeme id"))
    } else {
        Ok(value.to_string())
    }
}

impl FromStr for ClauseDescriptor {
    type Err = ClauseError;

    /// `CLAUSE subj=.. verb=.. obj=.. [adj=a,b] [quant=every] [adv=..]
    /// [pp=prep:obj] [persist=true|false] [p=0.8]`
    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let mut words = line.split_whitespace();
        if words.next() != Some("CLAUSE") {
            return Err(ClauseError::MissingKeyword);
        }
        let (mut subj, mut verb, mut obj) = (None, None, None);
        let mut clause = ClauseDescriptor::new("", "", "");
        let mut seen = Vec::new();
        for word in words {
            let (key, value) = word
                .split_once('=')
                .ok_or_else(|| ClauseError::NotAPair(word.to_string()))?;
            if seen.contains(&key) {
                return Err(ClauseError::DuplicateKey(key.into()));
            }
            seen.push(key);
            match key {
                "subj" => subj = Some(id(key, value)?),
                "verb" => verb = Some(id(key, value)?),
                "obj" => obj = Some(id(key, value)?),
                "adj" => {
                    clause.adjectives = value
                        .split(',')
                        .map(|a| id(key, a))
                        .collect::<Result<_, _>>()
                        .map_err(|_| bad(key, value, "expected comma-separated lexeme ids"))?;
                }
                "quant" => match value {
                    "every" => clause.quantifier = Some(Quantifier::Every),
                    _ => return Err(bad(key, value, "only `every` is supported")),
                },
                "adv" => clause.result_adverbial = Some(id(key, value)?),
                "pp" => {
                    let (prep, pobj) = value
                        .split_once(':')
                        .ok_or_else(|| bad(key, value, "expected <prep-id>:<obj-id>"))?;
                    clause.pp = Some(PrepPhrase {
                        preposition: id(key, prep)?,
                        object: id(key, pobj)?,
                    });
                }
                "persist" => {
                    clause.assume_persistence = value
                        .parse()
                        .map_err(|_| bad(key, value, "expected true or false"))?;
                }
                "p" => {
                    clause.persistence_p =
                        Some(value.parse().map_err(|e: String| bad(key, value, &e))?);
                }
                other => return Err(ClauseError::UnknownKey(other.into())),
            }
        }
        clause.subject = subj.ok_or(ClauseError::MissingKey("subj"))?;
        clause.verb = verb.ok_or(ClauseError::MissingKey("verb"))?;
        clause.object = obj.ok_or(ClauseError::MissingKey("obj"))?;
        Ok(clause)
    }
}

impl fmt::Display for ClauseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CLAUSE subj={} verb={} obj={}",
            self.subject, self.verb, self.object
        )?;
        if !self.adjectives.is_empty() {
            write!(f, " adj={}", self.adjectives.join(","))?;
        }
        if self.quantifier.is_some() {
            f.write_str(" quant=every")?;
        }
        if let Some(adv) = &self.result_adverbial {
            write!(f, " adv={adv}")?;
        }
        if let Some(pp) = &self.pp {
            write!(f, " pp={}:{}", pp.preposition, pp.object)?;
        }
        if !self.assume_persistence {
            f.write_str(" persist=false")?;
        }
        if let Some(p) = self.persistence_p {
            write!(f, " p={p}")?;
        }
        Ok(())
    }
}
