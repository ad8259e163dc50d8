//! Tokenizer and parser for the controlled English statement language.

pub mod ast;
mod grammar;
mod token;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use ast::Statement;
pub use grammar::parse;
pub use token::{tokenize, Keyword, Token, TokenKind};

use crate::lexicon::Lexicon;

/// Every rejection carries the character offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown word {word:?} at offset {offset}")]
    UnknownWord { word: String, offset: usize },
    #[error("missing final period at offset {offset}")]
    MissingPeriod { offset: usize },
    #[error("syntax error at offset {offset}: found {found:?}, expected {}", expected.join(" | "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("\"and\" and \"or\" mixed in one coordination at offset {offset}")]
    MixedConnective { offset: usize },
    #[error("{word:?} at offset {offset} has nothing to refer to")]
    UnboundAnaphor { word: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::UnknownWord { offset, .. }
            | ParseError::MissingPeriod { offset }
            | ParseError::Syntax { offset, .. }
            | ParseError::MixedConnective { offset }
            | ParseError::UnboundAnaphor { offset, .. } => *offset,
        }
    }
}

/// One line of a statement file: `{"id": "2/7", "text": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatementEntry {
    pub id: String,
    pub text: String,
}

impl StatementEntry {
    pub fn new(id: &str, text: &str) -> Self {
        StatementEntry {
            id: id.to_owned(),
            text: text.to_owned(),
        }
    }
}

pub fn statements_from_json(text: &str) -> Result<Vec<StatementEntry>, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn statements_to_json(statements: &[StatementEntry]) -> String {
    let mut out = serde_json::to_string_pretty(statements).expect("statements serialize");
    out.push('\n');
    out
}

/// Tokenizes and parses one sentence.
pub fn parse_sentence(text: &str, lexicon: &Lexicon) -> Result<Statement, ParseError> {
    parse(&tokenize(text, lexicon)?)
}
