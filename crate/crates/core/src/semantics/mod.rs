//! Statement meaning: translation to counting first-order logic, model
//! checking against an ontograph, and answer keys.

mod eval;
pub mod formula;
mod oracle;
mod translate;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use eval::{evaluate, EvalError};
pub use formula::{CountKind, Formula, Term, Var};
pub use oracle::{ground_oracle, MAX_ORACLE_DOMAIN};
pub use translate::{to_formula, TranslateError};

use crate::lexicon::Lexicon;
use crate::parser::{parse_sentence, ParseError, StatementEntry};
use crate::world::Ontograph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyEntry {
    pub id: String,
    #[serde(serialize_with = "truth_to_str", deserialize_with = "truth_from_str")]
    pub truth: bool,
}

fn truth_to_str<S: Serializer>(t: &bool, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(if *t { "true" } else { "false" })
}

fn truth_from_str<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
    match String::deserialize(d)?.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(serde::de::Error::custom(format!(
            "truth must be \"true\" or \"false\", got {other:?}"
        ))),
    }
}

/// Mechanically decided truth value of each statement of one ontograph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnswerKey {
    pub ontograph: String,
    pub entries: Vec<KeyEntry>,
}

impl AnswerKey {
    pub fn truth(&self, statement: &str) -> Option<bool> {
        self.entries
            .iter()
            .find(|e| e.id == statement)
            .map(|e| e.truth)
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let key: AnswerKey = serde_json::from_str(text)?;
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = key.entries.iter().find(|e| !seen.insert(e.id.as_str())) {
            return Err(serde::de::Error::custom(format!(
                "duplicate statement id {:?}",
                dup.id
            )));
        }
        Ok(key)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("key serializes");
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("statement {statement_id}: {kind}")]
pub struct KeyError {
    pub statement_id: String,
    pub kind: StatementError,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatementError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("statement id is used twice")]
    DuplicateId,
}

/// Parses, translates and evaluates one sentence.
pub fn decide(text: &str, world: &Ontograph, lexicon: &Lexicon) -> Result<bool, StatementError> {
    let ast = parse_sentence(text, lexicon)?;
    let formula = to_formula(&ast, lexicon)?;
    Ok(evaluate(&formula, world)?)
}

/// Answer key for a statement list; the first failing statement aborts.
pub fn generate_answer_key(
    world: &Ontograph,
    statements: &[StatementEntry],
    lexicon: &Lexicon,
) -> Result<AnswerKey, KeyError> {
    let mut entries: Vec<KeyEntry> = Vec::with_capacity(statements.len());
    for st in statements {
        let fail = |kind| KeyError {
            statement_id: st.id.clone(),
            kind,
        };
        if entries.iter().any(|e| e.id == st.id) {
            return Err(fail(StatementError::DuplicateId));
        }
        let truth = decide(&st.text, world, lexicon).map_err(fail)?;
        entries.push(KeyEntry {
            id: st.id.clone(),
            truth,
        });
    }
    Ok(AnswerKey {
        ontograph: world.id.clone(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{fixture_lexicon, fixtures};

    #[test]
    fn key_json_uses_string_truths() {
        let key = AnswerKey {
            ontograph: "t2".into(),
            entries: vec![KeyEntry {
                id: "2/2".into(),
                truth: true,
            }],
        };
        let text = key.to_json();
        assert!(text.contains("\"truth\": \"true\""), "{text}");
        assert_eq!(AnswerKey::from_json(&text).unwrap(), key);
        assert!(
            AnswerKey::from_json(r#"{"ontograph":"x","entries":[{"id":"a","truth":true}]}"#)
                .is_err()
        );
    }

    #[test]
    fn tautology_on_any_world() {
        for series in fixtures() {
            assert_eq!(
                decide("Every woman is a woman.", &series.world, &fixture_lexicon()),
                Ok(true)
            );
        }
    }

    #[test]
    fn first_failure_names_statement() {
        let world = &fixtures()[1].world;
        let statements = vec![
            StatementEntry::new("a", "Mary sees Tom."),
            StatementEntry::new("b", "Mary sees Tom"),
        ];
        let err = generate_answer_key(world, &statements, &fixture_lexicon()).unwrap_err();
        assert_eq!(err.statement_id, "b");
        assert!(matches!(
            err.kind,
            StatementError::Parse(ParseError::MissingPeriod { .. })
        ));
    }
}
