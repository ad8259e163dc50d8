use ontograph_core::corpus::{differential, gen_random_world, lexicon_for};
use ontograph_core::parser::parse_sentence;
use ontograph_core::semantics::{evaluate, ground_oracle, to_formula};

#[test]
fn evaluator_matches_grounding_oracle() {
    let report = differential(1, 1500);
    assert_eq!(report.mismatches, vec![]);
    // both verdicts well represented, so agreement is not trivial
    assert!(
        report.true_count > 300 && report.true_count < 1200,
        "{}",
        report.true_count
    );
}

#[test]
fn second_seed_range() {
    assert_eq!(differential(1_000_000, 500).mismatches, vec![]);
}

fn agree_on_worlds(text: &str, worlds: u64) {
    let mut checked = 0;
    for seed in 0..worlds {
        let world = gen_random_world(seed + 7, 1 + (seed % 8) as usize, 3, 2, 0.35);
        let lex = lexicon_for(&world);
        // some worlds lack the needed vocabulary; those are skipped
        let Ok(ast) = parse_sentence(text, &lex) else {
            continue;
        };
        let f = to_formula(&ast, &lex).unwrap();
        assert_eq!(
            evaluate(&f, &world),
            ground_oracle(&f, &world),
            "{text} on seed {seed}"
        );
        checked += 1;
    }
    assert!(
        checked * 2 > worlds,
        "{text}: only {checked} worlds had the vocabulary"
    );
}

#[test]
fn every_man_loves_a_woman() {
    // random worlds draw types and relations in vocabulary order, so
    // "person, woman, man" and "sees, loves" are always available here
    agree_on_worlds("Every man loves a woman.", 100);
}

#[test]
fn anaphora_and_counting() {
    for text in [
        "Everything that loves something sees it.",
        "Everything that is seen by something does not love it.",
        "Something that sees something loves it or is a man.",
        "Nothing sees itself.",
        "Every woman sees at most 1 thing.",
        "A man loves exactly 2 women.",
        "Nothing that is loved by at least 2 things sees nothing.",
        "If Mary sees Tom then every person loves nothing but women.",
    ] {
        agree_on_worlds(text, 200);
    }
}
