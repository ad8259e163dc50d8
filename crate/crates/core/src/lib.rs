//! Ontograph mini worlds and the tooling around them: a controlled-English
//! parser, translation to counting first-order logic, closed-world model
//! checking, fixture and random corpora, SVG rendering and experiment
//! scoring.

pub mod corpus;
pub mod lexicon;
pub mod parser;
pub mod render;
pub mod scoring;
pub mod semantics;
pub mod world;

pub use lexicon::Lexicon;
pub use parser::{parse_sentence, ParseError, Statement, StatementEntry};
pub use semantics::{decide, generate_answer_key, AnswerKey, Formula};
pub use world::Ontograph;
