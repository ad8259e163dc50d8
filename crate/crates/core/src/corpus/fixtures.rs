//! The four experiment series: one mini world and ten statements each.
//!
//! T1 has types but no arrows, T2 adds relations between named
//! individuals, T3 exercises domain, range and cardinality restrictions,
//! and T4 talks only about relations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lexicon::{Lexicon, NameEntry, NounEntry, VerbEntry};
use crate::parser::ast::{Object, Predicate, QuantWord, RelClause, Statement, Subject};
use crate::parser::{parse_sentence, tokenize, StatementEntry, TokenKind};
use crate::semantics::{generate_answer_key, AnswerKey};
use crate::world::{Individual, Legend, Ontograph, RelationDef, RelationInstance, TypeDef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    T1,
    T2,
    T3,
    T4,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::T1 => "T1",
            Family::T2 => "T2",
            Family::T3 => "T3",
            Family::T4 => "T4",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureSeries {
    pub family: Family,
    pub world: Ontograph,
    pub statements: Vec<StatementEntry>,
    pub key: AnswerKey,
}

/// (type name, singular, plural, icon)
pub(crate) const NOUNS: [(&str, &str, &str, &str); 9] = [
    ("person", "person", "people", "circle_person"),
    ("woman", "woman", "women", "triangle"),
    ("man", "man", "men", "square_object"),
    ("doctor", "doctor", "doctors", "star"),
    ("present", "present", "presents", "diamond"),
    ("driver", "driver", "drivers", "generic"),
    ("book", "book", "books", "square_object"),
    ("car", "car", "cars", "diamond"),
    ("dog", "dog", "dogs", "triangle"),
];

/// (relation name, third singular, base, past participle, arrow style)
pub(crate) const VERBS: [(&str, &str, &str, &str, &str); 6] = [
    ("sees", "sees", "see", "seen", "solid"),
    ("loves", "loves", "love", "loved", "dashed"),
    ("buys", "buys", "buy", "bought", "solid"),
    ("likes", "likes", "like", "liked", "dotted"),
    ("helps", "helps", "help", "helped", "dotted"),
    ("knows", "knows", "know", "known", "dashed"),
];

pub(crate) const NAMES: [&str; 9] = [
    "Mary", "Tom", "Sue", "Bill", "John", "Ann", "Bob", "Carl", "Dora",
];

/// Lexicon covering every fixture world and the random world vocabulary.
pub fn fixture_lexicon() -> Lexicon {
    Lexicon::new(
        NOUNS
            .iter()
            .map(|(ty, sg, pl, _)| NounEntry {
                singular: (*sg).into(),
                plural: (*pl).into(),
                type_name: (*ty).into(),
            })
            .collect(),
        VERBS
            .iter()
            .map(|(rel, s, b, pp, _)| VerbEntry {
                third_sg: (*s).into(),
                base: (*b).into(),
                past_participle: (*pp).into(),
                relation: (*rel).into(),
            })
            .collect(),
        NAMES
            .iter()
            .map(|n| NameEntry {
                name: (*n).into(),
                label: (*n).into(),
            })
            .collect(),
    )
    .expect("fixture lexicon is consistent")
}

pub(crate) fn legend(types: &[&str], relations: &[&str]) -> Legend {
    Legend {
        types: types
            .iter()
            .map(|t| {
                let icon = NOUNS.iter().find(|n| n.0 == *t).map_or("generic", |n| n.3);
                TypeDef {
                    name: (*t).into(),
                    icon: icon.into(),
                }
            })
            .collect(),
        relations: relations
            .iter()
            .map(|r| {
                let style = VERBS.iter().find(|v| v.0 == *r).map_or("solid", |v| v.4);
                RelationDef {
                    name: (*r).into(),
                    style: style.into(),
                }
            })
            .collect(),
    }
}

fn world(
    id: &str,
    legend: Legend,
    individuals: &[(&str, Option<&str>, &[&str])],
    arrows: &[(&str, &str, &str)],
) -> Ontograph {
    Ontograph {
        id: id.into(),
        legend,
        individuals: individuals
            .iter()
            .map(|(id, label, types)| Individual::new(id, *label, types))
            .collect(),
        relations: arrows
            .iter()
            .map(|(r, s, t)| RelationInstance::new(r, s, t))
            .collect(),
        positions: None,
    }
}

fn statements(prefix: u8, texts: [&str; 10]) -> Vec<StatementEntry> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| StatementEntry::new(&format!("{prefix}/{}", i + 1), t))
        .collect()
}

fn t1() -> (Ontograph, Vec<StatementEntry>) {
    let w = world(
        "t_one",
        legend(&["person", "woman", "man", "doctor", "present"], &[]),
        &[
            ("bill", Some("Bill"), &["person", "man", "doctor"]),
            ("mary", Some("Mary"), &["person", "woman", "doctor"]),
            ("present_a", None, &["present"]),
            ("present_b", None, &["present"]),
            ("sue", Some("Sue"), &["person", "woman"]),
            ("tom", Some("Tom"), &["person", "man"]),
        ],
        &[],
    );
    let s = statements(
        1,
        [
            "Mary is a woman.",
            "Tom is a woman.",
            "Mary is a woman or is a doctor.",
            "Every man is a person.",
            "Every person is a man.",
            "No woman is a man.",
            "Every doctor is a woman.",
            "Sue is not a doctor and is a person.",
            "Every person is a woman or is a man.",
            "If Tom is a doctor then Tom is a woman.",
        ],
    );
    (w, s)
}

fn t2() -> (Ontograph, Vec<StatementEntry>) {
    let w = world(
        "t_two",
        legend(
            &["person", "woman", "man", "present"],
            &["sees", "loves", "buys"],
        ),
        &[
            ("john", Some("John"), &["person", "man"]),
            ("mary", Some("Mary"), &["person", "woman"]),
            ("present_a", None, &["present"]),
            ("present_b", None, &["present"]),
            ("sue", Some("Sue"), &["person", "woman"]),
            ("tom", Some("Tom"), &["person", "man"]),
        ],
        &[
            ("sees", "tom", "mary"),
            ("sees", "mary", "sue"),
            ("sees", "sue", "tom"),
            ("loves", "tom", "mary"),
            ("loves", "john", "sue"),
            ("buys", "tom", "present_a"),
            ("buys", "sue", "present_b"),
        ],
    );
    let s = statements(
        2,
        [
            "Tom sees Mary.",
            "Mary does not see Tom.",
            "Mary loves Tom.",
            "Every man loves a woman.",
            "Sue buys a present.",
            "Tom does not buy a present.",
            "Mary buys nothing but presents.",
            "John sees nothing.",
            "Every woman buys nothing but presents.",
            "A woman loves Tom.",
        ],
    );
    (w, s)
}

fn t3() -> (Ontograph, Vec<StatementEntry>) {
    let w = world(
        "t_three",
        legend(&["person", "woman", "man", "present"], &["buys", "likes"]),
        &[
            ("mary", Some("Mary"), &["person", "woman"]),
            ("present_a", None, &["present"]),
            ("present_b", None, &["present"]),
            ("present_c", None, &["present"]),
            ("sue", Some("Sue"), &["person", "woman"]),
            ("tom", Some("Tom"), &["person", "man"]),
        ],
        &[
            ("buys", "tom", "present_a"),
            ("buys", "tom", "present_b"),
            ("buys", "sue", "present_c"),
            ("likes", "mary", "tom"),
            ("likes", "tom", "mary"),
            ("likes", "sue", "present_c"),
        ],
    );
    let s = statements(
        3,
        [
            "Everything that buys something is a person.",
            "Everything that is bought by something is a present.",
            "Everything that likes something is a woman.",
            "Everything that is liked by something is a person.",
            "Tom buys at least 2 presents.",
            "Every person buys at most 1 present.",
            "Sue buys exactly 1 present.",
            "Mary buys at least 1 present.",
            "Everything that buys at least 2 presents is a man.",
            "Every woman likes exactly 1 thing.",
        ],
    );
    (w, s)
}

fn t4() -> (Ontograph, Vec<StatementEntry>) {
    let w = world(
        "t_four",
        legend(&["person", "woman", "man"], &["loves", "sees", "helps"]),
        &[
            ("ann", Some("Ann"), &["person", "woman"]),
            ("bob", Some("Bob"), &["person", "man"]),
            ("carl", Some("Carl"), &["person", "man"]),
            ("dora", Some("Dora"), &["person", "woman"]),
        ],
        &[
            ("loves", "ann", "bob"),
            ("loves", "bob", "ann"),
            ("loves", "carl", "dora"),
            ("sees", "ann", "bob"),
            ("sees", "bob", "ann"),
            ("sees", "bob", "carl"),
            ("sees", "carl", "dora"),
            ("sees", "dora", "dora"),
            ("helps", "ann", "carl"),
            ("helps", "carl", "ann"),
            ("helps", "dora", "ann"),
        ],
    );
    let s = statements(
        4,
        [
            "Everything that loves something sees it.",
            "Everything that is loved by something loves it.",
            "Nothing loves itself.",
            "Something sees itself.",
            "Everything sees something.",
            "Nothing helps everything.",
            "Everything that helps something does not love it.",
            "Something loves at least 2 things.",
            "Everything that is seen by something sees something.",
            "Something sees nothing.",
        ],
    );
    (w, s)
}

/// The four series in order T1..T4, with keys computed by the evaluator.
pub fn fixtures() -> Vec<FixtureSeries> {
    let lexicon = fixture_lexicon();
    [
        (Family::T1, t1()),
        (Family::T2, t2()),
        (Family::T3, t3()),
        (Family::T4, t4()),
    ]
    .into_iter()
    .map(|(family, (world, statements))| {
        let key = generate_answer_key(&world, &statements, &lexicon)
            .expect("fixture statements evaluate");
        FixtureSeries {
            family,
            world,
            statements,
            key,
        }
    })
    .collect()
}

/// Truth of every fixture statement, worked out by hand against its world.
/// The evaluator's keys must agree with this table.
pub const HAND_TRUTHS: [(&str, bool); 40] = [
    ("1/1", true),
    ("1/2", false),
    ("1/3", true),
    ("1/4", true),
    ("1/5", false),
    ("1/6", true),
    ("1/7", false),
    ("1/8", true),
    ("1/9", true),
    ("1/10", true),
    ("2/1", true),
    ("2/2", true),
    ("2/3", false),
    ("2/4", true),
    ("2/5", true),
    ("2/6", false),
    ("2/7", true),
    ("2/8", true),
    ("2/9", true),
    ("2/10", false),
    ("3/1", true),
    ("3/2", true),
    ("3/3", false),
    ("3/4", false),
    ("3/5", true),
    ("3/6", false),
    ("3/7", true),
    ("3/8", false),
    ("3/9", true),
    ("3/10", true),
    ("4/1", true),
    ("4/2", false),
    ("4/3", true),
    ("4/4", true),
    ("4/5", true),
    ("4/6", true),
    ("4/7", true),
    ("4/8", false),
    ("4/9", true),
    ("4/10", false),
];

/// Statement ids the analysis may set aside as known semantic pitfalls.
pub const SPECIAL_CASES: [&str; 4] = ["1/3", "1/10", "2/7", "2/9"];

/// Restriction shapes recognized in statement trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    /// `Everything that VERBs something is a NOUN.`
    Domain,
    /// `Everything that is VERBed by something is a NOUN.`
    Range,
    /// any cardinal object
    Cardinality,
}

pub fn restrictions(statement: &Statement) -> Vec<Restriction> {
    let mut out = Vec::new();
    for s in statement.sentences() {
        if let Subject::Quantified {
            quantifier: QuantWord::Everything,
            relative: Some(rc),
        } = &s.subject
        {
            let typing = s.predicates.items().len() == 1
                && matches!(
                    s.predicates.items()[0],
                    Predicate::Copula { negated: false, .. }
                );
            if typing && *rc.object() == Object::Quantified(QuantWord::Something) {
                out.push(match rc {
                    RelClause::Active { .. } => Restriction::Domain,
                    RelClause::Passive { .. } => Restriction::Range,
                });
            }
        }
        let mut objects: Vec<&Object> = s
            .predicates
            .items()
            .iter()
            .filter_map(|p| p.object())
            .collect();
        if let Subject::Quantified {
            relative: Some(rc), ..
        } = &s.subject
        {
            objects.push(rc.object());
        }
        if objects.iter().any(|o| matches!(o, Object::Cardinal { .. })) {
            out.push(Restriction::Cardinality);
        }
    }
    out
}

impl FixtureSeries {
    /// Structural requirements of the series; empty when all hold.
    pub fn check(&self, lexicon: &Lexicon) -> Vec<String> {
        let mut problems = Vec::new();
        if self.statements.len() != 10 {
            problems.push(format!("{} statements, expected 10", self.statements.len()));
        }
        if self.key.entries.len() != self.statements.len() {
            problems.push("key does not cover every statement".into());
        }
        problems.extend(self.world.validate().iter().map(|v| v.to_string()));
        problems.extend(
            lexicon
                .check_legend(&self.world.legend)
                .iter()
                .map(|g| g.to_string()),
        );
        match self.family {
            Family::T1 => {
                if !self.world.relations.is_empty() {
                    problems.push("T1 world must have no relation instances".into());
                }
            }
            Family::T2 => {
                if self.world.relations.is_empty() {
                    problems.push("T2 world needs relation instances".into());
                }
                if self.world.individuals.iter().all(|i| i.label.is_none()) {
                    problems.push("T2 world needs named individuals".into());
                }
            }
            Family::T3 => {
                let found: Vec<Restriction> = self
                    .statements
                    .iter()
                    .filter_map(|s| parse_sentence(&s.text, lexicon).ok())
                    .flat_map(|ast| restrictions(&ast))
                    .collect();
                for r in [
                    Restriction::Domain,
                    Restriction::Range,
                    Restriction::Cardinality,
                ] {
                    if !found.contains(&r) {
                        problems.push(format!("T3 statements lack a {r:?} restriction"));
                    }
                }
            }
            Family::T4 => {
                for s in &self.statements {
                    let Ok(tokens) = tokenize(&s.text, lexicon) else {
                        continue;
                    };
                    if tokens.iter().any(|t| {
                        matches!(
                            t.kind,
                            TokenKind::ProperName | TokenKind::NounSg | TokenKind::NounPl
                        )
                    }) {
                        problems.push(format!(
                            "T4 statement {} mentions an individual or type",
                            s.id
                        ));
                    }
                }
            }
        }
        problems
    }
}
