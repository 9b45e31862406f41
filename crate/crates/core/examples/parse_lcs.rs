//! Parse, normalize, print and instantiate LCS terms.

use std::collections::BTreeMap;

use lexis::lcs::{parse, print, Syntax};

fn main() {
    let term = parse("[[x CAUSE [BECOME [y <mended>]]] & [IS [y <red>]]]").expect("valid term");
    println!("parsed:   {}", print(&term));
    println!("free:     {:?}", term.free_vars());

    let bindings = BTreeMap::from([
        ("x".to_string(), "m".to_string()),
        ("y".to_string(), "dress".to_string()),
    ]);
    let ground = term.substitute(&bindings).expect("all variables bound");
    println!("ground:   {}", print(&ground));

    let uncertain = parse("[IS [y <red>] : 0.8 | IS [y [NOT <red>]] : 0.2]").unwrap();
    println!("weighted: {}", print(&uncertain));

    // Weights that do not sum to one are rejected.
    match parse("[IS [y <red>] : 0.7 | IS [y [NOT <red>]] : 0.2]") {
        Ok(_) => unreachable!(),
        Err(e) => println!("error:    {e}"),
    }

    // Operators outside the seed set need declaring.
    let mut syntax = Syntax::default();
    assert!(syntax.parse("[x [PAINT y]]").is_err());
    syntax.add_operator("PAINT");
    println!(
        "agentive: {}",
        print(&syntax.parse("[x [PAINT y]]").unwrap())
    );
}
