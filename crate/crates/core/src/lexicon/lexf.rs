//! LEXF v1: the line-oriented lexicon file format.
//!
//! ```text
//! OPERATOR <IDENT>
//! LEXEME <id> SPELLING="..." SENSE="..." POS=<TAG>
//! TEMPLATE <id> ETYPE=<S|P|T|T_ACH|T_ACC> LCS="<lcs-expr>"
//! SLOT <template-id> <var> REQUIRES=<cap>[,<cap>...]
//! CAP <lexeme-id> <cap>[,<cap>...]
//! LET <template-id> <var> <lexeme-id> <0|1>
//! REL <ANTONYM|SYNONYM> <lexeme-id> <lexeme-id>
//! RESULT <lexeme-id> <adjective-lexeme-id>
//! REFERENT <lexeme-id> <symbol>
//! ```
//!
//! `#` starts a comment, blank lines are ignored, quoted values use
//! backslash escapes.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use super::{
    EventTemplate, LetKey, Lexeme, Lexicon, LexiconError, PosTag, Record, RelationKind, SrmRelation,
};
use crate::event::EventType;
use crate::lcs::{is_entity_id, LcsError};

pub const HEADER: &str = "# LEXF v1";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

/// Parses and validates; fails with the first problem found.
pub fn load(text: &str) -> Result<Lexicon, LexiconError> {
    let lexicon = read(text)?;
    match lexicon.validate().into_iter().next() {
        Some(err) => Err(err),
        None => Ok(lexicon),
    }
}

pub fn load_path(path: impl AsRef<Path>) -> Result<Lexicon, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(load(&text)?)
}

#[derive(Debug)]
struct Field {
    key: Option<String>,
    value: String,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> LexiconError {
    LexiconError::Syntax {
        line: Some(line),
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Field>, LexiconError> {
    let chars: Vec<char> = text.chars().collect();
    let mut fields = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        if chars[i] == '#' {
            break;
        }
        let column = i + 1;
        let mut raw = String::new();
        let mut key = None;
        while i < chars.len() && !chars[i].is_whitespace() {
            let c = chars[i];
            if c == '=' && key.is_none() && !raw.is_empty() {
                key = Some(std::mem::take(&mut raw));
                i += 1;
                continue;
            }
            if c == '"' {
                let open = i + 1;
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(syntax(line, open, "unterminated string")),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            let escaped = match chars.get(i + 1) {
                                Some('"') => '"',
                                Some('\\') => '\\',
                                Some('n') => '\n',
                                Some('t') => '\t',
                                _ => return Err(syntax(line, i + 1, "bad escape in string")),
                            };
                            raw.push(escaped);
                            i += 2;
                        }
                        Some(&ch) => {
                            raw.push(ch);
                            i += 1;
                        }
                    }
                }
                if i < chars.len() && !chars[i].is_whitespace() {
                    return Err(syntax(line, i + 1, "text after closing quote"));
                }
                continue;
            }
            raw.push(c);
            i += 1;
        }
        fields.push(Field {
            key,
            value: raw,
            column,
        });
    }
    Ok(fields)
}

struct Fields {
    line: usize,
    directive: String,
    items: std::vec::IntoIter<Field>,
    end_column: usize,
}

impl Fields {
    fn positional(&mut self, what: &str) -> Result<(String, usize), LexiconError> {
        match self.items.next() {
            Some(Field {
                key: None,
                value,
                column,
            }) => Ok((value, column)),
            Some(Field {
                key: Some(k),
                column,
                ..
            }) => Err(syntax(
                self.line,
                column,
                format!("{}: expected {what}, found key `{k}`", self.directive),
            )),
            None => Err(syntax(
                self.line,
                self.end_column,
                format!("{}: missing {what}", self.directive),
            )),
        }
    }

    fn keyed(&mut self, name: &str) -> Result<(String, usize), LexiconError> {
        match self.items.next() {
            Some(Field {
                key: Some(k),
                value,
                column,
            }) if k == name => Ok((value, column)),
            Some(Field { column, .. }) => Err(syntax(
                self.line,
                column,
                format!("{}: expected {name}=", self.directive),
            )),
            None => Err(syntax(
                self.line,
                self.end_column,
                format!("{}: missing {name}=", self.directive),
            )),
        }
    }

    fn finish(mut self) -> Result<(), LexiconError> {
        match self.items.next() {
            Some(f) => Err(syntax(
                self.line,
                f.column,
                format!("{}: unexpected `{}`", self.directive, f.value),
            )),
            None => Ok(()),
        }
    }
}

fn ident(
    line: usize,
    (value, column): (String, usize),
    what: &str,
) -> Result<String, LexiconError> {
    if is_entity_id(&value) {
        Ok(value)
    } else {
        Err(syntax(line, column, format!("invalid {what} `{value}`")))
    }
}

fn cap_list(line: usize, (value, column): (String, usize)) -> Result<Vec<String>, LexiconError> {
    let caps: Vec<String> = value.split(',').map(str::to_string).collect();
    if caps.iter().any(|c| !is_entity_id(c)) {
        return Err(syntax(
            line,
            column,
            format!("invalid capability list `{value}`"),
        ));
    }
    Ok(caps)
}

fn is_operator_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '-')
}

struct PendingTemplate {
    line: usize,
    id: String,
    etype: EventType,
    lcs: String,
    lcs_column: usize,
}

/// Parses LEXF text without cross-reference validation. Syntax errors and
/// duplicate ids still fail here.
pub fn read(text: &str) -> Result<Lexicon, LexiconError> {
    let mut lex = Lexicon::new();
    let mut templates = Vec::new();
    let mut slots = Vec::new();
    let mut seen_templates = BTreeSet::new();

    for (index, raw_line) in text.lines().enumerate() {
        let line = index + 1;
        let tokens = tokenize(raw_line, line)?;
        let mut items = tokens.into_iter();
        let Some(head) = items.next() else { continue };
        if head.key.is_some() {
            return Err(syntax(line, head.column, "expected a directive"));
        }
        let mut f = Fields {
            line,
            directive: head.value.clone(),
            items,
            end_column: raw_line.chars().count() + 1,
        };
        match head.value.as_str() {
            "OPERATOR" => {
                let (name, column) = f.positional("operator name")?;
                if !is_operator_name(&name) {
                    return Err(syntax(
                        line,
                        column,
                        format!("invalid operator name `{name}`"),
                    ));
                }
                f.finish()?;
                lex.note_origin(Record::Operator(name.clone()), line);
                lex.add_operator(name);
            }
            "LEXEME" => {
                let id = ident(line, f.positional("lexeme id")?, "lexeme id")?;
                let (spelling, _) = f.keyed("SPELLING")?;
                let (sense, _) = f.keyed("SENSE")?;
                let (tag, _) = f.keyed("POS")?;
                f.finish()?;
                let pos = tag.parse::<PosTag>().map_err(|tag| LexiconError::BadPos {
                    line: Some(line),
                    id: id.clone(),
                    tag,
                    expected: "one of VB VBD VBG NN NNP JJ RB DT IN".into(),
                })?;
                if lex.lexeme(&id).is_some() {
                    return Err(LexiconError::DuplicateId {
                        line: Some(line),
                        what: "lexeme",
                        id,
                    });
                }
                lex.note_origin(Record::Lexeme(id.clone()), line);
                lex.insert_lexeme(Lexeme::new(id, spelling, sense, pos));
            }
            "TEMPLATE" => {
                let id = ident(line, f.positional("template id")?, "template id")?;
                let (etype, column) = f.keyed("ETYPE")?;
                let etype = etype
                    .parse::<EventType>()
                    .map_err(|e| syntax(line, column, e.to_string()))?;
                let (lcs, lcs_column) = f.keyed("LCS")?;
                f.finish()?;
                if !seen_templates.insert(id.clone()) {
                    return Err(LexiconError::DuplicateId {
                        line: Some(line),
                        what: "template",
                        id,
                    });
                }
                templates.push(PendingTemplate {
                    line,
                    id,
                    etype,
                    lcs,
                    lcs_column,
                });
            }
            "SLOT" => {
                let template = ident(line, f.positional("template id")?, "template id")?;
                let var = ident(line, f.positional("variable")?, "variable")?;
                let caps = cap_list(line, f.keyed("REQUIRES")?)?;
                f.finish()?;
                slots.push((line, template, var, caps));
            }
            "CAP" => {
                let id = ident(line, f.positional("lexeme id")?, "lexeme id")?;
                let caps = cap_list(line, f.positional("capability list")?)?;
                f.finish()?;
                lex.note_origin(Record::Cap(id.clone()), line);
                lex.grant(id, caps);
            }
            "LET" => {
                let template = ident(line, f.positional("template id")?, "template id")?;
                let var = ident(line, f.positional("variable")?, "variable")?;
                let lexeme = ident(line, f.positional("lexeme id")?, "lexeme id")?;
                let (flag, column) = f.positional("0 or 1")?;
                f.finish()?;
                let allowed = match flag.as_str() {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(syntax(
                            line,
                            column,
                            format!("expected 0 or 1, found `{other}`"),
                        ))
                    }
                };
                let key = LetKey::new(template, var, lexeme);
                if lex.set_let(key.clone(), allowed).is_some() {
                    return Err(LexiconError::DuplicateId {
                        line: Some(line),
                        what: "LET entry",
                        id: format!("{} {} {}", key.template_id, key.variable, key.lexeme_id),
                    });
                }
                lex.note_origin(Record::Let(key), line);
            }
            "REL" => {
                let (kind, column) = f.positional("relation kind")?;
                let kind = kind
                    .parse::<RelationKind>()
                    .map_err(|k| syntax(line, column, format!("unknown relation `{k}`")))?;
                let a = ident(line, f.positional("lexeme id")?, "lexeme id")?;
                let b = ident(line, f.positional("lexeme id")?, "lexeme id")?;
                f.finish()?;
                let rel = SrmRelation::new(kind, a, b);
                lex.note_origin(Record::Rel(rel.clone()), line);
                lex.relate(rel);
            }
            "RESULT" => {
                let verb = ident(line, f.positional("lexeme id")?, "lexeme id")?;
                let adj = ident(line, f.positional("adjective id")?, "lexeme id")?;
                f.finish()?;
                if lex.set_result(verb.clone(), adj).is_some() {
                    return Err(LexiconError::DuplicateId {
                        line: Some(line),
                        what: "RESULT for",
                        id: verb,
                    });
                }
                lex.note_origin(Record::Result(verb), line);
            }
            "REFERENT" => {
                let id = ident(line, f.positional("lexeme id")?, "lexeme id")?;
                let sym = ident(line, f.positional("symbol")?, "referent symbol")?;
                f.finish()?;
                if lex.set_referent(id.clone(), sym).is_some() {
                    return Err(LexiconError::DuplicateId {
                        line: Some(line),
                        what: "REFERENT for",
                        id,
                    });
                }
                lex.note_origin(Record::Referent(id), line);
            }
            other => {
                return Err(syntax(
                    line,
                    head.column,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }

    // Operators may be declared after the templates that use them.
    let grammar = lex.syntax();
    for t in templates {
        let term = grammar.parse(&t.lcs).map_err(|e| {
            let offset = match &e {
                LcsError::UnbalancedBrackets { position }
                | LcsError::UnknownToken { position, .. }
                | LcsError::MixedWeights { position }
                | LcsError::WeightSum { position, .. }
                | LcsError::BadWeight { position, .. }
                | LcsError::Malformed { position, .. } => t.lcs[..*position].chars().count(),
                _ => 0,
            };
            // column of the first character inside LCS="
            syntax(
                t.line,
                t.lcs_column + 5 + offset,
                format!("template {}: {e}", t.id),
            )
        })?;
        lex.note_origin(Record::Template(t.id.clone()), t.line);
        lex.insert_template(EventTemplate::new(t.id, t.etype, term));
    }
    for (line, template, var, caps) in slots {
        lex.note_origin(Record::Slot(template.clone(), var.clone()), line);
        if !lex.require(&template, &var, caps) {
            return Err(LexiconError::DanglingReference {
                line: Some(line),
                what: "template",
                id: template,
            });
        }
    }
    Ok(lex)
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn join(caps: &BTreeSet<String>) -> String {
    caps.iter().cloned().collect::<Vec<_>>().join(",")
}

/// Canonical LEXF text: one block per directive kind, each sorted by id.
pub fn save(lexicon: &Lexicon) -> String {
    let mut blocks: Vec<Vec<String>> = Vec::new();
    blocks.push(
        lexicon
            .declared_operators()
            .map(|op| format!("OPERATOR {op}"))
            .collect(),
    );
    blocks.push(
        lexicon
            .lexemes()
            .map(|l| {
                format!(
                    "LEXEME {} SPELLING={} SENSE={} POS={}",
                    l.id,
                    quote(&l.spelling),
                    quote(&l.sense),
                    l.pos
                )
            })
            .collect(),
    );
    blocks.push(
        lexicon
            .templates()
            .map(|t| {
                format!(
                    "TEMPLATE {} ETYPE={} LCS={}",
                    t.id,
                    t.etype,
                    quote(&t.lcs.to_string())
                )
            })
            .collect(),
    );
    blocks.push(
        lexicon
            .templates()
            .flat_map(|t| {
                t.requirements
                    .iter()
                    .filter(|(_, caps)| !caps.is_empty())
                    .map(move |(var, caps)| {
                        format!("SLOT {} {} REQUIRES={}", t.id, var, join(caps))
                    })
            })
            .collect(),
    );
    blocks.push(
        lexicon
            .capability_assignments()
            .filter(|(_, caps)| !caps.is_empty())
            .map(|(id, caps)| format!("CAP {id} {}", join(caps)))
            .collect(),
    );
    blocks.push(
        lexicon
            .let_overrides()
            .map(|(k, allowed)| {
                format!(
                    "LET {} {} {} {}",
                    k.template_id,
                    k.variable,
                    k.lexeme_id,
                    u8::from(allowed)
                )
            })
            .collect(),
    );
    blocks.push(
        lexicon
            .relations()
            .map(|r| format!("REL {} {} {}", r.kind.as_str(), r.a, r.b))
            .collect(),
    );
    blocks.push(
        lexicon
            .result_links()
            .map(|(verb, adj)| format!("RESULT {verb} {adj}"))
            .collect(),
    );
    blocks.push(
        lexicon
            .referent_links()
            .map(|(id, sym)| format!("REFERENT {id} {sym}"))
            .collect(),
    );

    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for block in blocks.into_iter().filter(|b| !b.is_empty()) {
        out.push('\n');
        for line in block {
            let _ = writeln!(out, "{line}");
        }
    }
    out
}
