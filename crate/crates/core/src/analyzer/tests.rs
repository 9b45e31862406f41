use super::*;
use crate::corpus::{self, BUNDLED_LEXICON};
use crate::lcs::{conjunction, parse, print};
use crate::lexicon::{load, LetKey};

fn lex() -> Lexicon {
    load(BUNDLED_LEXICON).unwrap()
}

fn clause(line: &str) -> ClauseDescriptor {
    line.parse().unwrap_or_else(|e| panic!("{line}: {e}"))
}

fn preds(atoms: &[PredicateAtom]) -> Vec<String> {
    atoms.iter().map(ToString::to_string).collect()
}

#[test]
fn golden_corpus_reproduces_every_lcs() {
    let lex = lex();
    let clauses: Vec<_> = corpus::lines(corpus::GOLDEN_CLAUSES).collect();
    let expected = corpus::golden_lcs();
    assert_eq!(clauses.len(), expected.len());
    for (line, (label, lcs)) in clauses.iter().zip(expected) {
        let a = analyze(&lex, &clause(line)).unwrap_or_else(|e| panic!("{label}: {e}"));
        assert!(a.lcs.equal(&parse(lcs).unwrap()), "{label}: {}", a.lcs);
        assert_eq!(print(&a.lcs), print(&parse(lcs).unwrap()), "{label}");
        assert!(a.lcs.is_ground());
    }
}

#[test]
fn torn_dress() {
    let a = analyze(
        &lex(),
        &clause("CLAUSE subj=person-cathie verb=mend^2 obj=dress^1 adj=torn^1"),
    )
    .unwrap();
    assert_eq!(a.template_id, "mended-state1");
    assert_eq!(a.es.etype, EventType::ACHIEVEMENT);
    assert_eq!(
        preds(&a.lcs_prime_process),
        ["act(m, dress)", "torn(dress)"]
    );
    assert_eq!(preds(&a.lcs_prime_state), ["!torn(dress)", "mended(dress)"]);
    assert_eq!(a.bindings["x"], "person-cathie");
    assert_eq!(a.bindings["y"], "dress^1");
}

#[test]
fn red_persists_on_both_sides() {
    let a = analyze(
        &lex(),
        &clause("CLAUSE subj=person-cathie verb=mend^2 obj=dress^1 adj=torn^1,red"),
    )
    .unwrap();
    assert_eq!(
        conjunction(&a.lcs_prime_process),
        "act(m, dress) & torn(dress) & red(dress)"
    );
    assert_eq!(
        preds(&a.lcs_prime_state),
        ["!torn(dress)", "mended(dress)", "red(dress)"]
    );
}

#[test]
fn uncertain_persistence_emits_weighted_or() {
    let c =
        clause("CLAUSE subj=person-cathie verb=mend^2 obj=dress^1 adj=torn^1,red persist=false");
    let a = analyze(&lex(), &c).unwrap();
    assert_eq!(
        print(&a.lcs),
        "[m CAUSE [BECOME [dress <mended>]]] & [IS [dress <red>] : 0.8 | IS [dress [NOT <red>]] : 0.2]"
    );
    assert!(!a.lcs_prime_state.iter().any(|p| p.predicate == "red"));
    assert!(a.lcs_prime_process.iter().any(|p| p.predicate == "red"));

    let certain = analyze(&lex(), &clause(&format!("{c} p=1"))).unwrap();
    assert_eq!(
        print(&certain.lcs),
        "[m CAUSE [BECOME [dress <mended>]]] & [IS [dress <red>]]"
    );
}

#[test]
fn persistence_variant_examples() {
    let base = parse("[m CAUSE [BECOME [dress <mended>]]] & [IS [dress <red>]]").unwrap();
    let p = |s: &str| s.parse::<PersistenceP>();
    let v = persistence_variant(&base, "red", p("0.8").unwrap());
    let LcsTerm::And(parts) = &v else {
        panic!("{v}")
    };
    let LcsTerm::Or(alts) = &parts[1] else {
        panic!("{v}")
    };
    let (w1, w2) = (alts[0].weight.unwrap(), alts[1].weight.unwrap());
    assert!(w1 > w2);
    assert!((w1.as_f64() + w2.as_f64() - 1.0).abs() < 1e-9);
    assert_eq!(persistence_variant(&base, "red", p("1").unwrap()), base);
    assert!(p("0.5").is_err());
    assert!(p("1/2").is_err());
    assert!(p("0.51").is_ok());
}

#[test]
fn adverb_shifts_brushing_to_a_transition() {
    let lex = lex();
    let plain = analyze(
        &lex,
        &clause("CLAUSE subj=person-john verb=brush^1 obj=carpet^1 adj=dirty^1"),
    )
    .unwrap();
    assert_eq!(plain.kind(), EventKind::Process);
    assert!(plain.lcs_prime_state.is_empty());
    assert_eq!(
        conjunction(&plain.lcs_prime_process),
        "act(j, carpet) & dirty(carpet) & brush(carpet)"
    );
    assert_eq!(plain.es.subevent_count, Some(DEFAULT_SUBEVENTS));

    let shifted = analyze(
        &lex,
        &clause("CLAUSE subj=person-john verb=brush^1 obj=carpet^1 adj=dirty^1 adv=clean^2"),
    )
    .unwrap();
    assert_eq!(shifted.kind(), EventKind::Transition);
    assert_eq!(
        preds(&shifted.lcs_prime_state),
        ["!dirty(carpet)", "clean(carpet)"]
    );
}

#[test]
fn shift_examples() {
    let lex = lex();
    let brush = base_intent(
        &lex,
        &clause("CLAUSE subj=person-john verb=brush^1 obj=carpet^1"),
    )
    .unwrap();
    assert_eq!(brush.etype, EventType::PROCESS);
    let t = apply_adverbial_shift(&lex, &brush, "clean^2").unwrap();
    assert!(t.etype.is_transition());
    assert_eq!(t.result_adjective.as_deref(), Some("clean^3"));

    let paint = base_intent(
        &lex,
        &clause("CLAUSE subj=person-john verb=paint^1 obj=house^1"),
    )
    .unwrap();
    assert_eq!(paint.result_adjective, None);
    let t = apply_adverbial_shift(&lex, &paint, "blue^2").unwrap();
    assert_eq!(t.etype, EventType::ACCOMPLISHMENT);
    assert_eq!(
        lex.lexeme(t.result_adjective.as_deref().unwrap())
            .unwrap()
            .spelling,
        "blue"
    );

    assert_eq!(
        apply_adverbial_shift(&lex, &brush, "the^1"),
        Err(AnalyzerError::NotShiftEligible("the^1".into()))
    );
    let e = analyze(
        &lex,
        &clause("CLAUSE subj=person-john verb=brush^1 obj=carpet^1 adv=the^1"),
    )
    .unwrap_err();
    assert_eq!(e.name(), "NotShiftEligible");
}

#[test]
fn painting_without_an_adverb_has_no_template() {
    let e = analyze(
        &lex(),
        &clause("CLAUSE subj=person-john verb=paint^1 obj=house^1 adj=white^1"),
    )
    .unwrap_err();
    assert_eq!(e, AnalyzerError::NoTemplate("paint^1".into()));
}

#[test]
fn select_template_examples() {
    let lex = lex();
    let pick = |s: &str| select_template(&lex, &clause(s)).unwrap();
    assert_eq!(
        pick("CLAUSE subj=plumber^1 verb=fix^3 obj=faucet^1 quant=every"),
        "fixed-state1"
    );
    assert_eq!(
        pick("CLAUSE subj=person-mary verb=fix^3 obj=tire^2"),
        "fixed-state3"
    );
    assert_eq!(
        pick("CLAUSE subj=waiter^1 verb=fill^1 obj=glass^1 quant=every pp=with^1:water^1"),
        "filled-water-state1"
    );
    assert_eq!(
        pick("CLAUSE subj=person-cathie verb=mend^2 obj=dress^1 adj=red"),
        "mended-state1"
    );
}

#[test]
fn ambiguous_templates_are_reported() {
    let text = format!(
        "{BUNDLED_LEXICON}\nTEMPLATE rescued-alt-state2 ETYPE=T LCS=\"[x CAUSE [BECOME [y <rescued>]]]\"\n"
    );
    let lex = load(&text).unwrap();
    let e = select_template(
        &lex,
        &clause("CLAUSE subj=person-mary verb=rescue^1 obj=man^1"),
    )
    .unwrap_err();
    assert_eq!(
        e,
        AnalyzerError::AmbiguousTemplate(vec![
            "rescued-alt-state2".into(),
            "rescued-state2".into()
        ])
    );
}

#[test]
fn opposition_examples() {
    let lex = lex();
    let ids = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let o = detect_opposition(&lex, "mend^2", &ids(&["torn^1", "red"])).unwrap();
    assert_eq!((o.opposed, o.persisted), (ids(&["torn^1"]), ids(&["red"])));
    let o = detect_opposition(&lex, "fix^3", &ids(&["leaky^1", "blue^1"])).unwrap();
    assert_eq!(
        (o.opposed, o.persisted),
        (ids(&["leaky^1"]), ids(&["blue^1"]))
    );
    let o = detect_opposition(&lex, "comfort^1", &ids(&["crying^1"])).unwrap();
    assert_eq!((o.opposed, o.persisted), (ids(&[]), ids(&["crying^1"])));
    let o = detect_opposition(&lex, "paint^1", &ids(&["white^1"])).unwrap();
    assert_eq!(o.persisted, ids(&["white^1"]));
}

#[test]
fn carpets_cannot_mend() {
    let mut lex = lex();
    let bad = clause("CLAUSE subj=carpet^1 verb=mend^2 obj=dress^1 adj=torn^1");
    assert_eq!(
        analyze(&lex, &bad).unwrap_err(),
        AnalyzerError::BindingRejected {
            template: "mended-state1".into(),
            variable: "x".into(),
            lexeme: "carpet^1".into()
        }
    );
    lex.set_let(LetKey::new("mended-state1", "x", "carpet^1"), true);
    assert!(analyze(&lex, &bad).is_ok());
}

#[test]
fn clause_pos_is_checked() {
    let lex = lex();
    let e = analyze(
        &lex,
        &clause("CLAUSE subj=person-mary verb=fix^3 obj=tire^2 adj=fix^3"),
    )
    .unwrap_err();
    assert_eq!(e.name(), "BadPos");
    let e = analyze(
        &lex,
        &clause("CLAUSE subj=person-mary verb=dress^1 obj=tire^2"),
    )
    .unwrap_err();
    assert_eq!(e.name(), "BadPos");
    let e = analyze(&lex, &clause("CLAUSE subj=nobody verb=fix^3 obj=tire^2")).unwrap_err();
    assert_eq!(e, AnalyzerError::UnknownLexeme("nobody".into()));
}

#[test]
fn np_state_examples() {
    let lex = lex();
    let s = |adjs: &[&str]| {
        let adjs: Vec<String> = adjs.iter().map(|a| a.to_string()).collect();
        np_state(&lex, "dress^1", &adjs).unwrap()
    };
    let one = s(&["red"]);
    assert_eq!(
        (one.shape, print(&one.term).as_str()),
        (NpShape::PlainSingleState, "[IS [dress <red>]]")
    );
    let two = s(&["red", "torn^1"]);
    assert_eq!(
        (two.shape, print(&two.term).as_str()),
        (NpShape::MultiState, "[IS [IS [dress <red>] <torn>]]")
    );
    let none = s(&[]);
    assert_eq!(
        (none.shape, none.term.clone()),
        (NpShape::Bare, LcsTerm::entity("dress"))
    );
    assert!([one, two, none].iter().all(NpState::is_well_formed));

    let mix = np_mixture(&lex, ("water^1", "empty^1"), ("milk^1", "powdered^1")).unwrap();
    assert!(mix.is_well_formed());
    assert_eq!(np_state(&lex, "red", &[]).unwrap_err().name(), "BadPos");
}

#[test]
fn clause_syntax_errors_name_the_key() {
    let err = |s: &str| s.parse::<ClauseDescriptor>().unwrap_err();
    assert_eq!(
        err("CLAUSE subj=a verb=b obj=c colour=red").key(),
        Some("colour")
    );
    assert_eq!(
        err("CLAUSE subj=a verb=b obj=c quant=some").key(),
        Some("quant")
    );
    assert_eq!(err("CLAUSE subj=a verb=b").key(), Some("obj"));
    assert_eq!(err("CLAUSE subj=a verb=b obj=c p=0.5").key(), Some("p"));
    assert_eq!(err("CLAUSE subj=a verb=b obj=c pp=into").key(), Some("pp"));
    assert_eq!(err("subj=a verb=b obj=c"), ClauseError::MissingKeyword);
}

#[test]
fn clause_display_round_trips() {
    for line in corpus::lines(corpus::GOLDEN_CLAUSES) {
        let c = clause(line);
        assert_eq!(c.to_string(), line);
        assert_eq!(clause(&c.to_string()), c);
    }
    let c = clause("CLAUSE subj=a verb=b obj=c persist=false p=0.9");
    assert_eq!(clause(&c.to_string()), c);
}

#[test]
fn analyses_are_deterministic() {
    let lex = lex();
    for line in corpus::lines(corpus::GOLDEN_CLAUSES) {
        let c = clause(line);
        assert_eq!(analyze(&lex, &c).unwrap(), analyze(&lex, &c).unwrap());
    }
}

fn ids_with(lex: &Lexicon, keep: impl Fn(&Lexeme) -> bool) -> Vec<String> {
    lex.lexemes()
        .filter(|l| keep(l))
        .map(|l| l.id.clone())
        .collect()
}

mod props {
    use super::*;
    use proptest::prelude::*;
    use proptest::sample::{select, subsequence};

    fn arb_clause() -> impl Strategy<Value = ClauseDescriptor> {
        let lex = lex();
        let nouns = ids_with(&lex, |l| l.pos.is_noun());
        let verbs = ids_with(&lex, |l| l.pos.is_verb());
        let adjs = ids_with(&lex, |l| l.pos == PosTag::JJ);
        let advs = ids_with(&lex, |l| l.pos == PosTag::RB);
        (
            select(nouns.clone()),
            select(verbs),
            select(nouns.clone()),
            subsequence(adjs, 0..3),
            any::<bool>(),
            proptest::option::of(select(advs)),
            proptest::option::of(select(nouns)),
            any::<bool>(),
        )
            .prop_map(|(s, v, o, adjs, every, adv, pp, persist)| {
                let mut c = ClauseDescriptor::new(s, v, o).with_adjectives(adjs);
                if every {
                    c = c.every();
                }
                if let Some(adv) = adv {
                    c = c.with_adverbial(adv);
                }
                if let Some(pp) = pp {
                    c = c.with_pp("with^1", pp);
                }
                c.assume_persistence = persist;
                c
            })
    }

    proptest! {
        #[test]
        fn opposition_partitions_the_adjectives(c in arb_clause()) {
            let lex = lex();
            let o = detect_opposition(&lex, &c.verb, &c.adjectives).unwrap();
            prop_assert_eq!(o.opposed.len() + o.persisted.len(), c.adjectives.len());
            for a in &c.adjectives {
                prop_assert!(o.opposed.contains(a) != o.persisted.contains(a));
            }
        }

        #[test]
        fn successful_analyses_are_sound(c in arb_clause()) {
            let lex = lex();
            if let Ok(a) = analyze(&lex, &c) {
                prop_assert!(a.lcs.is_ground());
                prop_assert!(a.es.check().is_ok());
                if c.result_adverbial.is_some() {
                    prop_assert_ne!(a.kind(), EventKind::Process);
                }
                if a.kind() == EventKind::Transition {
                    prop_assert!(!a.lcs_prime_state.is_empty());
                }
                for (var, id) in &a.bindings {
                    prop_assert!(lex.can_bind(&a.template_id, var, id).unwrap());
                }
                if c.assume_persistence {
                    let o = detect_opposition(&lex, c.result_adverbial.as_deref().unwrap_or(&c.verb), &c.adjectives).unwrap();
                    if a.kind() == EventKind::Transition {
                        for adj in &o.persisted {
                            let atom = a.lcs_prime_process.iter().find(|p| p.predicate == lex.lexeme(adj).unwrap().spelling).cloned();
                            prop_assert!(atom.is_some());
                            prop_assert!(a.lcs_prime_state.contains(&atom.unwrap()));
                        }
                    }
                }
            }
        }
    }
}
