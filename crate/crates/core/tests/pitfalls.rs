use ontograph_core::corpus::{fixture_lexicon, fixtures, gen_random_world, lexicon_for};
use ontograph_core::parser::parse_sentence;
use ontograph_core::semantics::{
    decide, evaluate, ground_oracle, to_formula, CountKind, Formula, Term, Var,
};
use ontograph_core::world::{
    Individual, Legend, Ontograph, RelationDef, RelationInstance, TypeDef,
};
use proptest::prelude::*;

fn truth(series: usize, text: &str) -> bool {
    let world = &fixtures()[series].world;
    decide(text, world, &fixture_lexicon()).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn nothing_but_is_vacuous_without_edges() {
    // Mary buys nothing in the T2 world
    assert!(truth(1, "Mary buys nothing but presents."));
    assert!(!truth(1, "Mary buys at least 1 present."));
    assert!(truth(1, "Every woman buys nothing but presents."));
}

#[test]
fn or_is_inclusive() {
    // Mary is both a woman and a doctor
    assert!(truth(0, "Mary is a woman."));
    assert!(truth(0, "Mary is a doctor."));
    assert!(truth(0, "Mary is a woman or is a doctor."));
}

#[test]
fn conditional_with_false_precondition() {
    assert!(!truth(0, "Tom is a doctor."));
    assert!(truth(0, "If Tom is a doctor then Tom is a woman."));
    assert!(truth(0, "If Tom is a doctor then Tom is not a woman."));
}

#[test]
fn closed_world_negation() {
    let t2 = &fixtures()[1].world;
    let mary = t2.individual_by_label("Mary").unwrap();
    let tom = t2.individual_by_label("Tom").unwrap();
    assert_eq!(t2.holds_relation("sees", &mary.id, &tom.id), Ok(false));
    assert!(truth(1, "Mary does not see Tom."));
}

#[test]
fn negated_verb_outscopes_object() {
    // Tom buys a present, so "does not buy a present" is false rather than
    // "there is a present Tom does not buy"
    assert!(!truth(1, "Tom does not buy a present."));
}

#[test]
fn quantifiers_range_over_objects_too() {
    // presents are things, and nobody in T1 is a person-free object
    assert!(!truth(0, "Everything is a person."));
    assert!(truth(0, "Something is a present."));
}

#[test]
fn empty_domain_conventions() {
    let empty = Ontograph {
        id: "empty".into(),
        legend: Legend {
            types: vec![TypeDef {
                name: "man".into(),
                icon: "generic".into(),
            }],
            relations: vec![RelationDef {
                name: "sees".into(),
                style: "solid".into(),
            }],
        },
        individuals: vec![],
        relations: vec![],
        positions: None,
    };
    let lex = lexicon_for(&empty);
    assert_eq!(decide("Every man sees a man.", &empty, &lex), Ok(true));
    assert_eq!(decide("Something sees something.", &empty, &lex), Ok(false));
    assert_eq!(decide("Nothing sees itself.", &empty, &lex), Ok(true));
}

#[test]
fn exactly_zero_with_one_edge() {
    let f = Formula::count(
        CountKind::Exactly,
        0,
        Var(1),
        Formula::rel_atom("sees", Term::Const("Mary".into()), Term::Var(Var(1))),
    );
    let world = Ontograph {
        id: "pair".into(),
        legend: Legend {
            types: vec![],
            relations: vec![RelationDef {
                name: "sees".into(),
                style: "solid".into(),
            }],
        },
        individuals: vec![
            Individual::new("mary", Some("Mary"), &[]),
            Individual::new("tom", Some("Tom"), &[]),
        ],
        relations: vec![RelationInstance::new("sees", "mary", "tom")],
        positions: None,
    };
    assert_eq!(evaluate(&f, &world), Ok(false));
    assert_eq!(ground_oracle(&f, &world), Ok(false));
}

fn world_strategy() -> impl Strategy<Value = Ontograph> {
    (
        any::<u64>(),
        1usize..=8,
        1usize..=3,
        1usize..=2,
        0.0f64..=1.0,
    )
        .prop_map(|(seed, n, t, r, d)| gen_random_world(seed, n, t, r, d))
}

fn sentence(world: &Ontograph, text: &str) -> Formula {
    let lex = lexicon_for(world);
    to_formula(&parse_sentence(text, &lex).unwrap(), &lex).unwrap()
}

proptest! {
    #[test]
    fn vacuity_pair(world in world_strategy()) {
        let lex = lexicon_for(&world);
        let plural = &lex.nouns()[0].plural;
        let singular = &lex.nouns()[0].singular;
        let verb = &lex.verbs()[0];
        for ind in &world.individuals {
            let name = ind.label.as_deref().unwrap();
            let edges = world.relations.iter().any(|r| r.relation == verb.relation && r.source == ind.id);
            if edges {
                continue;
            }
            let but = format!("{name} {} nothing but {plural}.", verb.third_sg);
            let least = format!("{name} {} at least 1 {singular}.", verb.third_sg);
            prop_assert_eq!(decide(&but, &world, &lex), Ok(true));
            prop_assert_eq!(decide(&least, &world, &lex), Ok(false));
        }
    }

    #[test]
    fn count_consistency(world in world_strategy(), n in 0u32..5, m in 0u32..5) {
        let lex = lexicon_for(&world);
        let verb = &lex.verbs()[0].third_sg;
        let at_least = |k: u32| {
            let text = format!("Something {verb} at least {k} {}.", things(k));
            evaluate(&sentence(&world, &text), &world).unwrap()
        };
        if at_least(n.max(m)) {
            prop_assert!(at_least(n.min(m)));
        }
        // per individual: exactly n iff at least n and at most n
        let name = world.individuals[0].label.clone().unwrap();
        let each = |kw: &str| {
            let text = format!("{name} {verb} {kw} {n} {}.", things(n));
            evaluate(&sentence(&world, &text), &world).unwrap()
        };
        prop_assert_eq!(each("exactly"), each("at least") && each("at most"));
    }

    #[test]
    fn negation_involution(world in world_strategy(), seed in any::<u64>()) {
        let lex = lexicon_for(&world);
        let text = ontograph_core::corpus::gen_random_statement(seed, &lex);
        let f = sentence(&world, &text);
        let twice = Formula::not(Formula::not(f.clone()));
        prop_assert_eq!(evaluate(&twice, &world), evaluate(&f, &world));
    }

    #[test]
    fn conditional_truth_table(world in world_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let lex = lexicon_for(&world);
        let s1 = ontograph_core::corpus::gen_random_statement(a, &lex);
        let s2 = ontograph_core::corpus::gen_random_statement(b, &lex);
        let (p, q) = (sentence(&world, &s1), sentence(&world, &s2));
        let vp = evaluate(&p, &world).unwrap();
        let vq = evaluate(&q, &world).unwrap();
        let imp = evaluate(&Formula::implies(p, q), &world).unwrap();
        prop_assert_eq!(imp, !(vp && !vq));
    }
}

fn things(k: u32) -> &'static str {
    if k == 1 {
        "thing"
    } else {
        "things"
    }
}
