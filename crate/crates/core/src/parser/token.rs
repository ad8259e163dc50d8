use std::fmt;

use serde::Serialize;

use super::ParseError;
use crate::lexicon::{Lexicon, WordClass};

/// Fixed function words of the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Keyword {
    If,
    Then,
    A,
    Every,
    No,
    Everything,
    Something,
    Nothing,
    That,
    Is,
    By,
    Or,
    And,
    Not,
    Does,
    It,
    Itself,
    But,
    At,
    Most,
    Least,
    Exactly,
    Thing,
    Things,
}

impl Keyword {
    pub const ALL: [Keyword; 24] = [
        Keyword::If,
        Keyword::Then,
        Keyword::A,
        Keyword::Every,
        Keyword::No,
        Keyword::Everything,
        Keyword::Something,
        Keyword::Nothing,
        Keyword::That,
        Keyword::Is,
        Keyword::By,
        Keyword::Or,
        Keyword::And,
        Keyword::Not,
        Keyword::Does,
        Keyword::It,
        Keyword::Itself,
        Keyword::But,
        Keyword::At,
        Keyword::Most,
        Keyword::Least,
        Keyword::Exactly,
        Keyword::Thing,
        Keyword::Things,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::If => "if",
            Keyword::Then => "then",
            Keyword::A => "a",
            Keyword::Every => "every",
            Keyword::No => "no",
            Keyword::Everything => "everything",
            Keyword::Something => "something",
            Keyword::Nothing => "nothing",
            Keyword::That => "that",
            Keyword::Is => "is",
            Keyword::By => "by",
            Keyword::Or => "or",
            Keyword::And => "and",
            Keyword::Not => "not",
            Keyword::Does => "does",
            Keyword::It => "it",
            Keyword::Itself => "itself",
            Keyword::But => "but",
            Keyword::At => "at",
            Keyword::Most => "most",
            Keyword::Least => "least",
            Keyword::Exactly => "exactly",
            Keyword::Thing => "thing",
            Keyword::Things => "things",
        }
    }

    pub fn from_word(word: &str) -> Option<Keyword> {
        Keyword::ALL.into_iter().find(|k| k.as_str() == word)
    }
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Keyword(Keyword),
    ProperName,
    NounSg,
    NounPl,
    Verb3Sg,
    VerbBase,
    VerbPp,
    Number(u32),
    Period,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub kind: TokenKind,
    pub surface: String,
    /// Character index of the first character.
    pub offset: usize,
}

impl Token {
    pub fn is_keyword(&self, kw: Keyword) -> bool {
        self.kind == TokenKind::Keyword(kw)
    }
}

/// Splits a sentence into classified tokens. The final token is always a
/// period.
pub fn tokenize(text: &str, lexicon: &Lexicon) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '.' {
            tokens.push(Token {
                kind: TokenKind::Period,
                surface: ".".into(),
                offset: i,
            });
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let kind = classify(&word, tokens.is_empty(), lexicon).ok_or_else(|| {
                ParseError::UnknownWord {
                    word: word.clone(),
                    offset: start,
                }
            })?;
            tokens.push(Token {
                kind,
                surface: word,
                offset: start,
            });
        } else {
            return Err(ParseError::UnknownWord {
                word: c.to_string(),
                offset: i,
            });
        }
    }
    match tokens.last() {
        Some(t) if t.kind == TokenKind::Period => Ok(tokens),
        _ => Err(ParseError::MissingPeriod {
            offset: chars.len(),
        }),
    }
}

fn classify(word: &str, sentence_initial: bool, lexicon: &Lexicon) -> Option<TokenKind> {
    if word.bytes().all(|b| b.is_ascii_digit()) {
        return word.parse().ok().map(TokenKind::Number);
    }
    if let Some(kw) = Keyword::from_word(word) {
        return Some(TokenKind::Keyword(kw));
    }
    if let Some(class) = lexicon.classify(word) {
        return Some(match class {
            WordClass::NounSg => TokenKind::NounSg,
            WordClass::NounPl => TokenKind::NounPl,
            WordClass::Verb3Sg => TokenKind::Verb3Sg,
            WordClass::VerbBase => TokenKind::VerbBase,
            WordClass::VerbPp => TokenKind::VerbPp,
            WordClass::ProperName => TokenKind::ProperName,
        });
    }
    if sentence_initial {
        let mut lowered = word.to_owned();
        lowered[..1].make_ascii_lowercase();
        if lowered != word {
            return Keyword::from_word(&lowered).map(TokenKind::Keyword);
        }
    }
    None
}
