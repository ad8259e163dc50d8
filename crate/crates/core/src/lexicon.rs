//! English surface forms for the legend vocabulary.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parser::Keyword;
use crate::world::{is_proper_name, Legend};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NounEntry {
    pub singular: String,
    pub plural: String,
    #[serde(rename = "type")]
    pub type_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerbEntry {
    pub third_sg: String,
    pub base: String,
    pub past_participle: String,
    pub relation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NameEntry {
    pub name: String,
    pub label: String,
}

/// Grammatical role of a lexicon word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordClass {
    NounSg,
    NounPl,
    Verb3Sg,
    VerbBase,
    VerbPp,
    ProperName,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconFile {
    #[serde(default)]
    nouns: Vec<NounEntry>,
    #[serde(default)]
    verbs: Vec<VerbEntry>,
    #[serde(default)]
    names: Vec<NameEntry>,
}

/// Nouns, verbs and proper names, with every surface word mapped to exactly
/// one class.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "LexiconFile", into = "LexiconFile")]
pub struct Lexicon {
    nouns: Vec<NounEntry>,
    verbs: Vec<VerbEntry>,
    names: Vec<NameEntry>,
    // surface word -> (class, entry index)
    index: HashMap<String, (WordClass, usize)>,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.nouns == other.nouns && self.verbs == other.verbs && self.names == other.names
    }
}

impl TryFrom<LexiconFile> for Lexicon {
    type Error = LexiconError;

    fn try_from(file: LexiconFile) -> Result<Self, Self::Error> {
        Lexicon::new(file.nouns, file.verbs, file.names)
    }
}

impl From<Lexicon> for LexiconFile {
    fn from(lex: Lexicon) -> Self {
        LexiconFile {
            nouns: lex.nouns,
            verbs: lex.verbs,
            names: lex.names,
        }
    }
}

impl Lexicon {
    pub fn new(
        nouns: Vec<NounEntry>,
        verbs: Vec<VerbEntry>,
        names: Vec<NameEntry>,
    ) -> Result<Self, LexiconError> {
        let mut index = HashMap::new();
        let mut add = |word: &str, class: WordClass, at: usize| -> Result<(), LexiconError> {
            let ok = match class {
                WordClass::ProperName => is_proper_name(word),
                _ => is_lower_word(word),
            };
            if !ok {
                return Err(LexiconError::BadSpelling(word.to_owned()));
            }
            if Keyword::from_word(&word.to_ascii_lowercase()).is_some() {
                return Err(LexiconError::KeywordClash(word.to_owned()));
            }
            if index.insert(word.to_owned(), (class, at)).is_some() {
                return Err(LexiconError::Ambiguous(word.to_owned()));
            }
            Ok(())
        };
        for (i, n) in nouns.iter().enumerate() {
            add(&n.singular, WordClass::NounSg, i)?;
            add(&n.plural, WordClass::NounPl, i)?;
        }
        for (i, v) in verbs.iter().enumerate() {
            add(&v.third_sg, WordClass::Verb3Sg, i)?;
            add(&v.base, WordClass::VerbBase, i)?;
            add(&v.past_participle, WordClass::VerbPp, i)?;
        }
        for (i, n) in names.iter().enumerate() {
            add(&n.name, WordClass::ProperName, i)?;
        }
        Ok(Lexicon {
            nouns,
            verbs,
            names,
            index,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("lexicon serializes");
        out.push('\n');
        out
    }

    pub fn nouns(&self) -> &[NounEntry] {
        &self.nouns
    }

    pub fn verbs(&self) -> &[VerbEntry] {
        &self.verbs
    }

    pub fn names(&self) -> &[NameEntry] {
        &self.names
    }

    pub fn classify(&self, word: &str) -> Option<WordClass> {
        self.index.get(word).map(|(c, _)| *c)
    }

    /// Noun entry for a singular or plural form.
    pub fn noun(&self, word: &str) -> Option<&NounEntry> {
        match self.index.get(word) {
            Some((WordClass::NounSg | WordClass::NounPl, i)) => Some(&self.nouns[*i]),
            _ => None,
        }
    }

    /// Verb entry for any of its three forms.
    pub fn verb(&self, word: &str) -> Option<&VerbEntry> {
        match self.index.get(word) {
            Some((WordClass::Verb3Sg | WordClass::VerbBase | WordClass::VerbPp, i)) => {
                Some(&self.verbs[*i])
            }
            _ => None,
        }
    }

    pub fn name(&self, word: &str) -> Option<&NameEntry> {
        match self.index.get(word) {
            Some((WordClass::ProperName, i)) => Some(&self.names[*i]),
            _ => None,
        }
    }

    /// Checks that each legend type has exactly one noun and each legend
    /// relation exactly one verb. Extra entries are allowed.
    pub fn check_legend(&self, legend: &Legend) -> Vec<CoverageGap> {
        let mut gaps = Vec::new();
        for t in &legend.types {
            let n = self.nouns.iter().filter(|e| e.type_name == t.name).count();
            if n != 1 {
                gaps.push(CoverageGap::Type {
                    name: t.name.clone(),
                    entries: n,
                });
            }
        }
        for r in &legend.relations {
            let n = self.verbs.iter().filter(|e| e.relation == r.name).count();
            if n != 1 {
                gaps.push(CoverageGap::Relation {
                    name: r.name.clone(),
                    entries: n,
                });
            }
        }
        gaps
    }
}

fn is_lower_word(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_lowercase() || b == b'_')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("word {0:?} has more than one lexicon entry")]
    Ambiguous(String),
    #[error("word {0:?} is a reserved keyword")]
    KeywordClash(String),
    #[error("word {0:?} is not spelled as its class requires")]
    BadSpelling(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverageGap {
    Type { name: String, entries: usize },
    Relation { name: String, entries: usize },
}

impl fmt::Display for CoverageGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverageGap::Type { name, entries } => {
                write!(f, "type {name:?} has {entries} noun entries, expected 1")
            }
            CoverageGap::Relation { name, entries } => {
                write!(
                    f,
                    "relation {name:?} has {entries} verb entries, expected 1"
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::{RelationDef, TypeDef};

    fn noun(sg: &str, pl: &str, ty: &str) -> NounEntry {
        NounEntry {
            singular: sg.into(),
            plural: pl.into(),
            type_name: ty.into(),
        }
    }

    fn verb(s: &str, b: &str, pp: &str, rel: &str) -> VerbEntry {
        VerbEntry {
            third_sg: s.into(),
            base: b.into(),
            past_participle: pp.into(),
            relation: rel.into(),
        }
    }

    #[test]
    fn classifies_forms() {
        let lex = Lexicon::new(
            vec![noun("woman", "women", "woman")],
            vec![verb("sees", "see", "seen", "sees")],
            vec![NameEntry {
                name: "Mary".into(),
                label: "Mary".into(),
            }],
        )
        .unwrap();
        assert_eq!(lex.classify("women"), Some(WordClass::NounPl));
        assert_eq!(lex.classify("seen"), Some(WordClass::VerbPp));
        assert_eq!(lex.classify("Mary"), Some(WordClass::ProperName));
        assert_eq!(lex.verb("see").unwrap().relation, "sees");
        assert!(lex.noun("see").is_none());
    }

    #[test]
    fn rejects_collisions_and_keywords() {
        assert_eq!(
            Lexicon::new(
                vec![noun("love", "loves", "love")],
                vec![verb("loves", "love", "loved", "loves")],
                vec![]
            ),
            Err(LexiconError::Ambiguous("loves".into()))
        );
        assert_eq!(
            Lexicon::new(vec![noun("thing", "things", "thing")], vec![], vec![]),
            Err(LexiconError::KeywordClash("thing".into()))
        );
        assert!(Lexicon::new(
            vec![],
            vec![],
            vec![NameEntry {
                name: "mary".into(),
                label: "Mary".into()
            }]
        )
        .is_err());
    }

    #[test]
    fn legend_coverage() {
        let lex = Lexicon::new(vec![noun("man", "men", "man")], vec![], vec![]).unwrap();
        let legend = Legend {
            types: vec![
                TypeDef {
                    name: "man".into(),
                    icon: "circle_person".into(),
                },
                TypeDef {
                    name: "dog".into(),
                    icon: "star".into(),
                },
            ],
            relations: vec![RelationDef {
                name: "sees".into(),
                style: "solid".into(),
            }],
        };
        let gaps = lex.check_legend(&legend);
        assert_eq!(gaps.len(), 2);
    }
}
