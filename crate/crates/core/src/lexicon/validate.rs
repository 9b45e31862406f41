use super::{Lexicon, LexiconError, PosTag, Record, RelationKind};

pub(super) fn validate(lex: &Lexicon) -> Vec<LexiconError> {
    let mut out = Vec::new();
    let dangling = |line, what, id: &str| LexiconError::DanglingReference {
        line,
        what,
        id: id.to_string(),
    };

    for t in lex.templates() {
        let free = t.lcs.free_vars();
        for var in t.requirements.keys() {
            if !free.contains(var) {
                out.push(LexiconError::SlotMismatch {
                    line: lex.origin(&Record::Slot(t.id.clone(), var.clone())),
                    template: t.id.clone(),
                    variable: var.clone(),
                });
            }
        }
    }

    for (id, _) in lex.capability_assignments() {
        if lex.lexeme(id).is_none() {
            out.push(dangling(
                lex.origin(&Record::Cap(id.to_string())),
                "lexeme",
                id,
            ));
        }
    }

    for (key, _) in lex.let_overrides() {
        let line = lex.origin(&Record::Let(key.clone()));
        match lex.template(&key.template_id) {
            None => out.push(dangling(line, "template", &key.template_id)),
            Some(t) if !t.lcs.free_vars().contains(&key.variable) => {
                out.push(LexiconError::SlotMismatch {
                    line,
                    template: key.template_id.clone(),
                    variable: key.variable.clone(),
                })
            }
            Some(_) => {}
        }
        if lex.lexeme(&key.lexeme_id).is_none() {
            out.push(dangling(line, "lexeme", &key.lexeme_id));
        }
    }

    for rel in lex.relations() {
        let line = lex.origin(&Record::Rel(rel.clone()));
        for id in [&rel.a, &rel.b] {
            if lex.lexeme(id).is_none() {
                out.push(dangling(line, "lexeme", id));
            }
        }
        if rel.a == rel.b {
            out.push(LexiconError::SelfRelation {
                line,
                kind: match rel.kind {
                    RelationKind::Antonym => "ANTONYM",
                    RelationKind::Synonym => "SYNONYM",
                },
                id: rel.a.clone(),
            });
        }
    }

    for (verb, adj) in lex.result_links() {
        let line = lex.origin(&Record::Result(verb.to_string()));
        match lex.lexeme(verb) {
            None => out.push(dangling(line, "lexeme", verb)),
            Some(l) if !(l.pos.is_verb() || l.pos == PosTag::RB) => {
                out.push(LexiconError::BadPos {
                    line,
                    id: verb.to_string(),
                    tag: l.pos.to_string(),
                    expected: "RESULT source must be a verb or adverb".into(),
                })
            }
            Some(_) => {}
        }
        match lex.lexeme(adj) {
            None => out.push(dangling(line, "lexeme", adj)),
            Some(l) if l.pos != PosTag::JJ => out.push(LexiconError::BadPos {
                line,
                id: adj.to_string(),
                tag: l.pos.to_string(),
                expected: "RESULT target must be JJ".into(),
            }),
            Some(_) => {}
        }
    }

    for (id, _) in lex.referent_links() {
        if lex.lexeme(id).is_none() {
            out.push(dangling(
                lex.origin(&Record::Referent(id.to_string())),
                "lexeme",
                id,
            ));
        }
    }

    out.sort_by_key(|e| e.line().unwrap_or(usize::MAX));
    out
}
