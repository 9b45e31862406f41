//! Run every bundled clause and compare with the expected LCS.

use lexis::analyzer::{analyze, ClauseDescriptor};
use lexis::corpus::{golden_lcs, lines, BUNDLED_LEXICON, GOLDEN_CLAUSES};
use lexis::lcs::{parse, print};
use lexis::lexicon::load;

fn main() {
    let lex = load(BUNDLED_LEXICON).unwrap();
    let expected = golden_lcs();
    let mut failures = 0;
    for (line, (label, want)) in lines(GOLDEN_CLAUSES).zip(&expected) {
        let clause: ClauseDescriptor = line.parse().unwrap();
        let got = print(&analyze(&lex, &clause).unwrap().lcs);
        let want = print(&parse(want).unwrap());
        let mark = if got == want {
            "ok "
        } else {
            failures += 1;
            "BAD"
        };
        println!("{mark} {label:>3}  {got}");
    }
    println!("{} of {} match", expected.len() - failures, expected.len());
}
