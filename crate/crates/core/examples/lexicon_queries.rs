//! Load the bundled lexicon and ask it questions.

use lexis::corpus::BUNDLED_LEXICON;
use lexis::lexicon::load;

fn main() {
    let lex = load(BUNDLED_LEXICON).expect("bundled lexicon is valid");
    println!(
        "{} lexemes, {} templates",
        lex.lexemes().count(),
        lex.templates().count()
    );

    for verb in ["mend^2", "fix^3", "paint^1"] {
        println!(
            "result of {verb}: {:?}",
            lex.result_adjective(verb).unwrap()
        );
    }

    for (a, b) in [
        ("mended^1", "torn^1"),
        ("fixed^1", "torn^1"),
        ("fixed^1", "red"),
    ] {
        println!("opposed({a}, {b}) = {}", lex.opposed(a, b).unwrap());
    }

    for who in ["person-cathie", "carpet^1"] {
        let ok = lex.can_bind("mended-state1", "x", who).unwrap();
        println!("{who} can fill x of mended-state1: {ok}");
    }
}
