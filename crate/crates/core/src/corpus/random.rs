//! Seeded random worlds and statements for differential testing.

use std::collections::BTreeSet;

use super::fixtures::{legend, NAMES, NOUNS, VERBS};
use super::rng::XorShift64Star;
use crate::lexicon::{Lexicon, NameEntry, NounEntry, VerbEntry};
use crate::parser::ast::*;
use crate::parser::parse_sentence;
use crate::semantics::{evaluate, ground_oracle, to_formula};
use crate::world::{Individual, Ontograph, RelationInstance};

/// Membership probability of each (individual, type) pair.
const MEMBERSHIP_DENSITY: f64 = 0.5;

/// Bijective base-26 spelling: a, b, ..., z, aa, ab, ...
fn letters(mut i: u64) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

fn individual_id(i: usize) -> String {
    format!("ind_{}", letters(i as u64))
}

/// Random valid world. Type and relation counts are capped at the size of
/// the built-in vocabulary (9 types, 6 relations); the first 9 individuals
/// carry proper-name labels.
///
/// Draw order: for each individual, each type (membership with
/// probability 1/2); then for each relation, source, target (arrow with
/// probability `edge_density`).
pub fn gen_random_world(
    seed: u64,
    n_individuals: usize,
    n_types: usize,
    n_relations: usize,
    edge_density: f64,
) -> Ontograph {
    let mut rng = XorShift64Star::new(seed);
    let types: Vec<&str> = NOUNS.iter().take(n_types).map(|n| n.0).collect();
    let relations: Vec<&str> = VERBS.iter().take(n_relations).map(|v| v.0).collect();
    let ids: Vec<String> = (0..n_individuals).map(individual_id).collect();

    let individuals = ids
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let members: BTreeSet<String> = types
                .iter()
                .filter(|_| rng.chance(MEMBERSHIP_DENSITY))
                .map(|t| (*t).to_owned())
                .collect();
            Individual {
                id: id.clone(),
                label: NAMES.get(i).map(|n| (*n).to_owned()),
                types: members,
            }
        })
        .collect();

    let mut arrows = Vec::new();
    for rel in &relations {
        for s in &ids {
            for t in &ids {
                if rng.chance(edge_density) {
                    arrows.push(RelationInstance::new(rel, s, t));
                }
            }
        }
    }

    Ontograph {
        id: format!("random_{}", letters(seed)),
        legend: legend(&types, &relations),
        individuals,
        relations: arrows,
        positions: None,
    }
}

/// Lexicon restricted to a world's legend and labels, drawn from the
/// built-in vocabulary.
pub fn lexicon_for(world: &Ontograph) -> Lexicon {
    let nouns = NOUNS
        .iter()
        .filter(|n| world.legend.has_type(n.0))
        .map(|(ty, sg, pl, _)| NounEntry {
            singular: (*sg).into(),
            plural: (*pl).into(),
            type_name: (*ty).into(),
        })
        .collect();
    let verbs = VERBS
        .iter()
        .filter(|v| world.legend.has_relation(v.0))
        .map(|(rel, s, b, pp, _)| VerbEntry {
            third_sg: (*s).into(),
            base: (*b).into(),
            past_participle: (*pp).into(),
            relation: (*rel).into(),
        })
        .collect();
    let names = world
        .individuals
        .iter()
        .filter_map(|i| i.label.as_deref())
        .filter(|l| NAMES.contains(l))
        .map(|l| NameEntry {
            name: l.into(),
            label: l.into(),
        })
        .collect();
    Lexicon::new(nouns, verbs, names).expect("built-in vocabulary is consistent")
}

/// A random sentence over the lexicon. Every grammar alternative available
/// at a choice point is equally likely; coordinations hold one to three
/// predicates. Proper names are skipped when the lexicon has none.
///
/// Panics when the lexicon has no noun or no verb.
pub fn gen_random_statement(seed: u64, lexicon: &Lexicon) -> String {
    assert!(
        !lexicon.nouns().is_empty() && !lexicon.verbs().is_empty(),
        "statement generation needs at least one noun and one verb"
    );
    let mut g = StatementGen {
        rng: XorShift64Star::new(seed),
        lexicon,
    };
    g.statement().to_string()
}

struct StatementGen<'l> {
    rng: XorShift64Star,
    lexicon: &'l Lexicon,
}

impl StatementGen<'_> {
    fn noun_sg(&mut self) -> String {
        self.rng.pick(self.lexicon.nouns()).singular.clone()
    }

    fn noun_pl(&mut self) -> String {
        self.rng.pick(self.lexicon.nouns()).plural.clone()
    }

    fn name(&mut self) -> String {
        self.rng.pick(self.lexicon.names()).name.clone()
    }

    fn has_names(&self) -> bool {
        !self.lexicon.names().is_empty()
    }

    fn quant(&mut self) -> QuantWord {
        *self.rng.pick(&[
            QuantWord::Everything,
            QuantWord::Something,
            QuantWord::Nothing,
        ])
    }

    fn statement(&mut self) -> Statement {
        if self.rng.below(2) == 0 {
            Statement::Simple(self.sentence())
        } else {
            Statement::Conditional {
                antecedent: self.sentence(),
                consequent: self.sentence(),
            }
        }
    }

    fn sentence(&mut self) -> Sentence {
        let subject = self.subject();
        let it_bound = subject.binds_it();
        let n = 1 + self.rng.below(3);
        let connective = *self.rng.pick(&[Connective::And, Connective::Or]);
        let items = (0..n).map(|_| self.predicate(it_bound)).collect();
        Sentence {
            subject,
            predicates: Coordination::joined(connective, items),
        }
    }

    fn subject(&mut self) -> Subject {
        let mut alts = vec![1, 2];
        if self.has_names() {
            alts.push(0);
        }
        match *self.rng.pick(&alts) {
            0 => Subject::Proper(self.name()),
            1 => Subject::Determined {
                det: *self
                    .rng
                    .pick(&[Determiner::A, Determiner::Every, Determiner::No]),
                noun: self.noun_sg(),
            },
            _ => {
                let quantifier = self.quant();
                let relative = if self.rng.below(2) == 0 {
                    None
                } else {
                    let verb = self.rng.pick(self.lexicon.verbs()).clone();
                    Some(if self.rng.below(2) == 0 {
                        RelClause::Active {
                            verb: verb.third_sg,
                            object: self.object(false),
                        }
                    } else {
                        RelClause::Passive {
                            participle: verb.past_participle,
                            agent: self.object(false),
                        }
                    })
                };
                Subject::Quantified {
                    quantifier,
                    relative,
                }
            }
        }
    }

    fn predicate(&mut self, it_bound: bool) -> Predicate {
        match self.rng.below(3) {
            0 => Predicate::Copula {
                negated: self.rng.below(2) == 1,
                noun: self.noun_sg(),
            },
            1 => {
                let verb = self.rng.pick(self.lexicon.verbs()).third_sg.clone();
                Predicate::Verb {
                    verb,
                    object: self.object(it_bound),
                }
            }
            _ => {
                let verb = self.rng.pick(self.lexicon.verbs()).base.clone();
                Predicate::NegatedVerb {
                    verb,
                    object: self.object(it_bound),
                }
            }
        }
    }

    fn object(&mut self, it_bound: bool) -> Object {
        let mut alts = vec![1, 2, 4, 5, 6];
        if self.has_names() {
            alts.push(0);
        }
        if it_bound {
            alts.push(3);
        }
        alts.sort_unstable();
        match *self.rng.pick(&alts) {
            0 => Object::Proper(self.name()),
            1 => Object::Indefinite(self.noun_sg()),
            2 => Object::Quantified(self.quant()),
            3 => Object::It,
            4 => Object::Itself,
            5 => Object::NothingBut(self.noun_pl()),
            _ => {
                let bound = *self
                    .rng
                    .pick(&[Bound::AtMost, Bound::AtLeast, Bound::Exactly]);
                let count = self.rng.below(4) as u32;
                let noun = if self.rng.below(2) == 0 {
                    None
                } else if count == 1 {
                    Some(self.noun_sg())
                } else {
                    Some(self.noun_pl())
                };
                Object::Cardinal { bound, count, noun }
            }
        }
    }
}

/// Outcome of comparing the evaluator with the grounding oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialReport {
    pub pairs: usize,
    /// Pairs the evaluator judged true.
    pub true_count: usize,
    /// (world, statement, evaluator verdict, oracle verdict); errors are
    /// rendered as text
    pub mismatches: Vec<(String, String, String, String)>,
}

/// Pair `i` uses a world of `i % 9` individuals, one to three types, one or
/// two relations and a density cycling through 0.15, 0.3, 0.5 and 0.8,
/// with a statement drawn from that world's own lexicon.
pub fn differential(first_seed: u64, pairs: usize) -> DifferentialReport {
    const DENSITIES: [f64; 4] = [0.15, 0.3, 0.5, 0.8];
    let mut report = DifferentialReport {
        pairs,
        true_count: 0,
        mismatches: Vec::new(),
    };
    for i in 0..pairs {
        let seed = first_seed + i as u64;
        let world = gen_random_world(
            seed,
            i % 9,
            1 + i % 3,
            1 + (i / 3) % 2,
            DENSITIES[(i / 7) % 4],
        );
        let lexicon = lexicon_for(&world);
        let text = gen_random_statement(seed.wrapping_mul(0x9E37_79B9).wrapping_add(17), &lexicon);
        let formula = parse_sentence(&text, &lexicon)
            .map_err(|e| e.to_string())
            .and_then(|ast| to_formula(&ast, &lexicon).map_err(|e| e.to_string()));
        let (fast, slow) = match &formula {
            Ok(f) => (
                evaluate(f, &world).map_err(|e| e.to_string()),
                ground_oracle(f, &world).map_err(|e| e.to_string()),
            ),
            Err(e) => (Err(e.clone()), Err(String::new())),
        };
        if fast == Ok(true) {
            report.true_count += 1;
        }
        if fast != slow || fast.is_err() {
            let show = |r: &Result<bool, String>| match r {
                Ok(b) => b.to_string(),
                Err(e) => format!("error: {e}"),
            };
            report
                .mismatches
                .push((world.id.clone(), text, show(&fast), show(&slow)));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixture_lexicon;
    use crate::parser::{tokenize, TokenKind};

    #[test]
    fn ids_are_identifiers() {
        assert_eq!(individual_id(0), "ind_a");
        assert_eq!(individual_id(25), "ind_z");
        assert_eq!(individual_id(26), "ind_aa");
        assert_eq!(individual_id(27), "ind_ab");
    }

    #[test]
    fn worlds_are_deterministic_and_valid() {
        let a = gen_random_world(42, 5, 3, 2, 0.5);
        let b = gen_random_world(42, 5, 3, 2, 0.5);
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        assert_eq!(a.validate(), vec![]);
        let empty = gen_random_world(7, 0, 2, 2, 0.5);
        assert!(empty.individuals.is_empty());
        assert_eq!(empty.validate(), vec![]);
        let big = gen_random_world(3, 30, 9, 6, 0.2);
        assert_eq!(big.validate(), vec![]);
    }

    #[test]
    fn density_extremes() {
        let full = gen_random_world(9, 4, 1, 2, 1.0);
        assert_eq!(full.relations.len(), 2 * 16);
        let none = gen_random_world(9, 4, 1, 2, 0.0);
        assert!(none.relations.is_empty());
    }

    #[test]
    fn statements_are_deterministic_and_parse() {
        let lex = fixture_lexicon();
        for seed in 0..500 {
            let s = gen_random_statement(seed, &lex);
            assert_eq!(s, gen_random_statement(seed, &lex));
            let ast = parse_sentence(&s, &lex).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(ast.to_string(), s);
        }
    }

    #[test]
    fn vocabulary_closure() {
        let lex = Lexicon::new(
            vec![NounEntry {
                singular: "man".into(),
                plural: "men".into(),
                type_name: "man".into(),
            }],
            vec![VerbEntry {
                third_sg: "sees".into(),
                base: "see".into(),
                past_participle: "seen".into(),
                relation: "sees".into(),
            }],
            vec![NameEntry {
                name: "Tom".into(),
                label: "Tom".into(),
            }],
        )
        .unwrap();
        for seed in 0..200 {
            let s = gen_random_statement(seed, &lex);
            for t in tokenize(&s, &lex).unwrap() {
                match t.kind {
                    TokenKind::NounSg => assert_eq!(t.surface, "man"),
                    TokenKind::NounPl => assert_eq!(t.surface, "men"),
                    TokenKind::Verb3Sg => assert_eq!(t.surface, "sees"),
                    TokenKind::VerbBase => assert_eq!(t.surface, "see"),
                    TokenKind::VerbPp => assert_eq!(t.surface, "seen"),
                    TokenKind::ProperName => assert_eq!(t.surface, "Tom"),
                    _ => {}
                }
            }
        }
    }
}
