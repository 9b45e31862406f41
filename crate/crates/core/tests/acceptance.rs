//! Acceptance criteria, one line each. Exits non-zero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lexis::analyzer::{analyze, ClauseDescriptor};
use lexis::cli;
use lexis::corpus::{self, BUNDLED_LEXICON, GOLDEN_CLAUSES};
use lexis::event::EventKind;
use lexis::lcs::{parse, print, Disjunct, LcsTerm, Weight};
use lexis::lexicon::{load, save, LetKey, Lexicon};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn lexicon() -> Lexicon {
    load(BUNDLED_LEXICON).expect("shipped lexicon loads")
}

fn clauses() -> Vec<(&'static str, ClauseDescriptor)> {
    corpus::golden_lcs()
        .into_iter()
        .map(|(label, _)| label)
        .zip(corpus::lines(GOLDEN_CLAUSES).map(|l| l.parse().expect("golden clause parses")))
        .collect()
}

fn clause(label: &str) -> ClauseDescriptor {
    clauses()
        .into_iter()
        .find(|(l, _)| *l == label)
        .expect("label exists")
        .1
}

const RUNTIME_LIMIT: Duration = Duration::from_secs(1);

fn golden_corpus() -> Outcome {
    let lex = lexicon();
    let expected = corpus::golden_lcs();
    let cases = clauses();
    ensure(cases.len() == 13 && expected.len() == 13, || {
        format!("{} clauses", cases.len())
    })?;
    let start = Instant::now();
    for ((label, c), (_, lcs)) in cases.iter().zip(&expected) {
        let a = analyze(&lex, c).map_err(|e| format!("{label}: {e}"))?;
        let want = parse(lcs).map_err(|e| format!("{label}: golden line: {e}"))?;
        ensure(a.lcs.equal(&want), || format!("{label}: got {}", a.lcs))?;
    }
    let took = start.elapsed();
    ensure(took < RUNTIME_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "{} clauses equal the expected LCS in {took:?}",
        cases.len()
    ))
}

fn opposition() -> Outcome {
    let lex = lexicon();
    let opp = |a: &str, b: &str| lex.opposed(a, b).map_err(|e| e.to_string());
    ensure(opp("torn^1", "mended^1")?, || {
        "torn^1/mended^1 not opposed".into()
    })?;
    ensure(!opp("red", "torn^1")?, || "red/torn^1 opposed".into())?;
    let ids: Vec<&str> = lex.lexemes().map(|l| l.id.as_str()).collect();
    let mut pairs = 0;
    for (i, a) in ids.iter().enumerate() {
        ensure(!opp(a, a)?, || format!("{a} opposes itself"))?;
        for b in &ids[i + 1..] {
            ensure(opp(a, b)? == opp(b, a)?, || {
                format!("asymmetric on {a}, {b}")
            })?;
            pairs += 1;
        }
    }
    ensure(pairs < 2500, || format!("{pairs} pairs"))?;
    Ok(format!(
        "symmetric and irreflexive over {} lexemes ({pairs} pairs)",
        ids.len()
    ))
}

fn shift() -> Outcome {
    let lex = lexicon();
    let mut shifted = 0;
    for (label, c) in clauses() {
        if c.result_adverbial.is_some() {
            let a = analyze(&lex, &c).map_err(|e| format!("{label}: {e}"))?;
            ensure(a.kind() == EventKind::Transition, || {
                format!("{label} is {:?}", a.kind())
            })?;
            shifted += 1;
        }
    }
    let mut without = clause("10b");
    without.result_adverbial = None;
    ensure(without == clause("10a"), || {
        "10b without adverb differs from 10a".into()
    })?;
    let a = analyze(&lex, &without).map_err(|e| e.to_string())?;
    ensure(a.kind() == EventKind::Process, || {
        format!("kind {:?}", a.kind())
    })?;
    let golden_10a = corpus::golden_lcs()
        .into_iter()
        .find(|(l, _)| *l == "10a")
        .unwrap()
        .1;
    ensure(a.lcs.equal(&parse(golden_10a).unwrap()), || {
        format!("got {}", a.lcs)
    })?;
    Ok(format!(
        "{shifted} adverbial clauses are T; 10b without adverb is P with the 10a LCS"
    ))
}

fn persistence() -> Outcome {
    let lex = lexicon();
    for (label, adj) in [("1b", "red"), ("2b", "blue")] {
        let a = analyze(&lex, &clause(label)).map_err(|e| e.to_string())?;
        let on = |atoms: &[lexis::lcs::PredicateAtom]| {
            atoms.iter().any(|p| p.predicate == adj && !p.is_negative())
        };
        ensure(on(&a.lcs_prime_process) && on(&a.lcs_prime_state), || {
            format!("{label}: {adj} missing from P or S")
        })?;
    }
    let mut c = clause("1b");
    c.assume_persistence = false;
    c.persistence_p = Some("0.8".parse().unwrap());
    let a = analyze(&lex, &c).map_err(|e| e.to_string())?;
    let mut ors = Vec::new();
    a.lcs.walk(&mut |t| {
        if let LcsTerm::Or(alts) = t {
            ors.push(alts.clone());
        }
    });
    let [alts] = ors.as_slice() else {
        return Err(format!("expected one Or in {}", a.lcs));
    };
    let w: Vec<f64> = alts
        .iter()
        .map(|d: &Disjunct| d.weight.map_or(f64::NAN, Weight::as_f64))
        .collect();
    ensure(w.len() == 2 && w[0] > w[1], || format!("weights {w:?}"))?;
    ensure((w[0] + w[1] - 1.0).abs() <= 1e-9, || {
        format!("weights sum to {}", w[0] + w[1])
    })?;
    Ok(format!(
        "red and blue persist; uncertain red weighs {} vs {}",
        w[0], w[1]
    ))
}

fn binding() -> Outcome {
    let mut lex = lexicon();
    let mut bad = clause("1a");
    bad.subject = "carpet^1".into();
    match analyze(&lex, &bad) {
        Err(e) if e.name() == "BindingRejected" => {}
        other => return Err(format!("carpet subject gave {other:?}")),
    }
    analyze(&lex, &clause("1a")).map_err(|e| format!("cathie: {e}"))?;

    let table = |lex: &Lexicon| {
        let mut out = BTreeMap::new();
        for t in lex.templates() {
            for var in t.slots().keys() {
                for l in lex.lexemes() {
                    out.insert(
                        (t.id.clone(), var.clone(), l.id.clone()),
                        lex.can_bind(&t.id, var, &l.id).unwrap(),
                    );
                }
            }
        }
        out
    };
    let before = table(&lex);
    let key = (
        "mended-state1".to_string(),
        "x".to_string(),
        "carpet^1".to_string(),
    );
    lex.set_let(LetKey::new(&key.0, &key.1, &key.2), !before[&key]);
    let after = table(&lex);
    let changed: Vec<_> = before.keys().filter(|k| before[*k] != after[*k]).collect();
    ensure(changed == [&key], || format!("changed: {changed:?}"))?;
    analyze(&lex, &bad).map_err(|e| format!("after override: {e}"))?;
    Ok(format!(
        "carpet rejected, cathie accepted, one override flips 1 of {} bindings",
        before.len()
    ))
}

const ROUND_TRIP_SEED: u64 = 0x05ee_d1c5;
const RANDOM_TERMS: usize = 1000;
const MAX_DEPTH: u32 = 6;

struct Gen(ChaCha8Rng);

impl Gen {
    fn pick<'a>(&mut self, options: &[&'a str]) -> &'a str {
        options[self.0.random_range(0..options.len())]
    }

    fn referent(&mut self) -> LcsTerm {
        if self.0.random_bool(0.5) {
            LcsTerm::var(self.pick(&["x", "y", "z"]))
        } else {
            LcsTerm::entity(self.pick(&["m", "dress", "tire^2", "person-john", "w"]))
        }
    }

    fn state(&mut self) -> LcsTerm {
        LcsTerm::state(self.pick(&["mended", "dirty", "blue", "filled-with-water"]))
    }

    fn term(&mut self, depth: u32) -> LcsTerm {
        let leaf = depth <= 1 || self.0.random_bool(0.2);
        if leaf {
            return if self.0.random_bool(0.7) {
                self.referent()
            } else {
                self.state()
            };
        }
        let d = depth - 1;
        match self.0.random_range(0..7) {
            0 => {
                let st = if d >= 2 && self.0.random_bool(0.3) {
                    LcsTerm::negation(self.state())
                } else {
                    self.state()
                };
                LcsTerm::attribution(self.term(d), st)
            }
            1 => {
                let op = self.pick(&[
                    "BECOME",
                    "IS",
                    "ARE",
                    "EVERY",
                    "SUBSTANCE-OF",
                    "CLEAN",
                    "BRUSH",
                ]);
                LcsTerm::apply(op, self.term(d))
            }
            2 => LcsTerm::cause(self.term(d), self.term(d)),
            3 => {
                let mut action = self.term(d);
                while action.is_state_like() {
                    action = self.term(d);
                }
                LcsTerm::agentive(self.referent(), action)
            }
            4 => LcsTerm::And(
                (0..self.0.random_range(2..4))
                    .map(|_| self.term(d))
                    .collect(),
            ),
            5 => LcsTerm::Or(
                (0..self.0.random_range(2..4))
                    .map(|_| Disjunct::new(self.term(d)))
                    .collect(),
            ),
            _ => {
                let w = Weight::new(self.0.random_range(1..10), 10).unwrap();
                LcsTerm::Or(vec![
                    Disjunct::weighted(self.term(d), w),
                    Disjunct::weighted(self.term(d), w.complement()),
                ])
            }
        }
    }
}

fn depth(t: &LcsTerm) -> u32 {
    match t {
        LcsTerm::Var(_) | LcsTerm::Entity(_) | LcsTerm::State(_) => 1,
        LcsTerm::Attribution { subject, state } => 1 + depth(subject).max(depth(state)),
        LcsTerm::Apply { arg, .. } => 1 + depth(arg),
        LcsTerm::Cause { agent, effect } => 1 + depth(agent).max(depth(effect)),
        LcsTerm::Agentive { agent, action } => 1 + depth(agent).max(depth(action)),
        LcsTerm::And(ts) => 1 + ts.iter().map(depth).max().unwrap_or(0),
        LcsTerm::Or(ds) => 1 + ds.iter().map(|d| depth(&d.term)).max().unwrap_or(0),
    }
}

fn fixpoint(t: &LcsTerm) -> Result<(), String> {
    let printed = print(t);
    let again = print(&parse(&printed).map_err(|e| format!("{printed}: {e}"))?);
    ensure(printed == again, || {
        format!("{printed} reprints as {again}")
    })
}

fn parsed(text: &str) -> Result<LcsTerm, String> {
    parse(text).map_err(|e| format!("{text}: {e}"))
}

fn parser_round_trip() -> Outcome {
    let lex = lexicon();
    let templates: Vec<&LcsTerm> = lex.templates().map(|t| &t.lcs).collect();
    ensure(templates.len() == 13, || {
        format!("{} templates", templates.len())
    })?;
    for t in templates {
        fixpoint(t)?;
    }
    for (_, lcs) in corpus::golden_lcs() {
        fixpoint(&parsed(lcs)?)?;
    }
    let mut gen = Gen(ChaCha8Rng::seed_from_u64(ROUND_TRIP_SEED));
    for _ in 0..RANDOM_TERMS {
        let t = gen.term(MAX_DEPTH);
        ensure(depth(&t) <= MAX_DEPTH, || {
            format!("generator exceeded depth: {}", print(&t))
        })?;
        let normal = t.clone().normalize();
        fixpoint(&normal)?;
        let back = parsed(&print(&t))?;
        ensure(back == normal, || {
            format!("{} parses to {back}, not its normal form", print(&t))
        })?;
    }
    Ok(format!(
        "13 templates, 13 golden lines and {RANDOM_TERMS} random terms (depth <= {MAX_DEPTH})"
    ))
}

fn lexicon_round_trip() -> Outcome {
    let lex = lexicon();
    let again = load(&save(&lex)).map_err(|e| e.to_string())?;
    ensure(again == lex, || "load(save(L)) differs from L".into())?;
    let diags = lex.validate();
    ensure(diags.is_empty(), || format!("{} diagnostics", diags.len()))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let fmt = |text: &str| -> Result<String, String> {
        let path = dir.path().join("in.lexf");
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        let out = cli::run(["lexis", "--lexicon", path.to_str().unwrap(), "fmt"]);
        ensure(out.status == 0, || out.stderr.clone())?;
        Ok(out.stdout)
    };
    let once = fmt(BUNDLED_LEXICON)?;
    ensure(fmt(&once)? == once, || "fmt is not a fixpoint".into())?;
    Ok("load/save round trip, fmt fixpoint, no diagnostics".into())
}

fn snapshot_stability() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let lexicon = dir.path().join("lexicon.lexf");
    let batch = dir.path().join("golden.clauses");
    std::fs::write(&lexicon, BUNDLED_LEXICON).map_err(|e| e.to_string())?;
    std::fs::write(&batch, GOLDEN_CLAUSES).map_err(|e| e.to_string())?;
    let run = || {
        cli::run([
            "lexis",
            "--lexicon",
            lexicon.to_str().unwrap(),
            "batch",
            batch.to_str().unwrap(),
        ])
    };
    let (a, b) = (run(), run());
    ensure(a.status == 0, || a.stderr.clone())?;
    ensure(a.stdout.as_bytes() == b.stdout.as_bytes(), || {
        "runs differ".into()
    })?;
    ensure(
        a.stdout == include_str!("snapshots/golden_batch.txt"),
        || "differs from snapshot".into(),
    )?;
    Ok(format!(
        "{} bytes, identical across runs and equal to the stored snapshot",
        a.stdout.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden corpus", golden_corpus),
        ("opposition suite", opposition),
        ("shift property", shift),
        ("persistence property", persistence),
        ("binding suite", binding),
        ("parser round trip", parser_round_trip),
        ("lexicon round trip", lexicon_round_trip),
        ("snapshot stability", snapshot_stability),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
