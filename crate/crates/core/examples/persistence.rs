//! Properties that may or may not survive the event.

use lexis::analyzer::{
    analyze, detect_opposition, persistence_variant, ClauseDescriptor, PersistenceP,
};
use lexis::corpus::BUNDLED_LEXICON;
use lexis::lcs::{parse, print, Weight};
use lexis::lexicon::load;

fn main() {
    let lex = load(BUNDLED_LEXICON).unwrap();
    let adjectives = vec!["torn^1".to_string(), "red".to_string()];
    let split = detect_opposition(&lex, "mend^2", &adjectives).unwrap();
    println!(
        "opposed: {:?}  persisted: {:?}",
        split.opposed, split.persisted
    );

    let certain =
        ClauseDescriptor::new("person-cathie", "mend^2", "dress^1").with_adjectives(adjectives);
    println!(
        "certain:   {}",
        print(&analyze(&lex, &certain).unwrap().lcs)
    );

    let p = PersistenceP::new(Weight::new(9, 10).unwrap()).unwrap();
    let uncertain = certain.uncertain(Some(p));
    println!(
        "uncertain: {}",
        print(&analyze(&lex, &uncertain).unwrap().lcs)
    );

    let lcs = parse("[[m CAUSE [BECOME [dress <mended>]]] & [IS [dress <red>]]]").unwrap();
    for p in ["0.8", "1"] {
        let p: PersistenceP = p.parse().unwrap();
        println!("p={p}: {}", print(&persistence_variant(&lcs, "red", p)));
    }
    println!("p=0.5: {}", "0.5".parse::<PersistenceP>().unwrap_err());
}
