//! Analyze one clause into an event structure and its LCS.

use lexis::analyzer::{analyze, select_template, ClauseDescriptor};
use lexis::cli::{render, OutputMode};
use lexis::corpus::BUNDLED_LEXICON;
use lexis::lexicon::load;

fn main() {
    let lex = load(BUNDLED_LEXICON).unwrap();
    let clause = ClauseDescriptor::new("person-cathie", "mend^2", "dress^1")
        .with_adjectives(["torn^1", "red"]);
    println!("{clause}");
    println!("template: {}", select_template(&lex, &clause).unwrap());

    let analysis = analyze(&lex, &clause).unwrap();
    println!("{}", render(&analysis, OutputMode::All));

    // A carpet cannot mend anything.
    let bad = ClauseDescriptor::new("carpet^1", "mend^2", "dress^1");
    println!("{}", analyze(&lex, &bad).unwrap_err());
}
