//! Build event structures by hand and render them.

use lexis::event::{build_process, build_transition, render_ascii};
use lexis::lcs::PredicateAtom;

fn main() {
    let act = PredicateAtom::binary("act", "m", "dress");
    let torn = PredicateAtom::unary("torn", "dress");
    let mended = PredicateAtom::unary("mended", "dress");

    let es = build_transition(&[act.clone(), torn], &[mended], &[], None).unwrap();
    es.check().unwrap();
    println!("{}", render_ascii(&es));

    let walk = build_process(&[PredicateAtom::unary("walk", "j")], 3).unwrap();
    println!("{}", render_ascii(&walk));
}
