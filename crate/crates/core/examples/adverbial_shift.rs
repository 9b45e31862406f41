//! A result adverb turns a process verb into an accomplishment.

use lexis::analyzer::{analyze, apply_adverbial_shift, base_intent, ClauseDescriptor};
use lexis::cli::{render, OutputMode};
use lexis::corpus::BUNDLED_LEXICON;
use lexis::lexicon::load;

fn main() {
    let lex = load(BUNDLED_LEXICON).unwrap();
    let plain =
        ClauseDescriptor::new("person-john", "paint^1", "house^1").with_adjectives(["white^1"]);
    let base = base_intent(&lex, &plain).unwrap();
    println!("paint alone: {}", base.etype.label());
    println!("{}", analyze(&lex, &plain).unwrap_err());

    let shifted = apply_adverbial_shift(&lex, &base, "blue^2").unwrap();
    println!(
        "paint blue:  {} ({:?})",
        shifted.etype.label(),
        shifted.result_adjective
    );

    let clause = plain.with_adverbial("blue^2");
    println!(
        "{}",
        render(&analyze(&lex, &clause).unwrap(), OutputMode::All)
    );
}
