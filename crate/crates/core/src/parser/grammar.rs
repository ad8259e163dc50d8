//! Recursive-descent parser for the statement grammar:
//!
//! ```text
//! statement   = simple "." | "If" simple "then" simple "." ;
//! simple      = subject predcoord ;
//! subject     = PROPER | det NOUN_SG | quantword [relclause] ;
//! det         = "a" | "every" | "no" ;
//! quantword   = "everything" | "something" | "nothing" ;
//! relclause   = "that" ( VERB_3SG object | "is" VERB_PP "by" object ) ;
//! predcoord   = pred { conn pred } ;      (* one connective per list *)
//! conn        = "or" | "and" ;
//! pred        = "is" ["not"] "a" NOUN_SG | VERB_3SG object
//!             | "does" "not" VERB_BASE object ;
//! object      = PROPER | "a" NOUN_SG | quantword | "it" | "itself"
//!             | "nothing" "but" NOUN_PL | cardinal ;
//! cardinal    = ("at" "most" | "at" "least" | "exactly") NUM
//!               ( NOUN_SG | "thing" )    (* NUM = 1 *)
//!             | ("at" "most" | "at" "least" | "exactly") NUM
//!               ( NOUN_PL | "things" ) ; (* NUM <> 1 *)
//! ```
//!
//! Two tokens of lookahead suffice ("nothing" versus "nothing but").

use super::ast::*;
use super::token::{Keyword, Token, TokenKind};
use super::ParseError;

/// Parses a token list produced by [`super::tokenize`].
pub fn parse(tokens: &[Token]) -> Result<Statement, ParseError> {
    let mut p = Parser { tokens, pos: 0 };
    let stmt = p.statement()?;
    p.expect_period()?;
    if let Some(t) = p.peek() {
        return Err(p.unexpected(t, &["end of sentence"]));
    }
    Ok(stmt)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

const SUBJECT_START: &[&str] = &[
    "proper name",
    "\"a\"",
    "\"every\"",
    "\"no\"",
    "\"everything\"",
    "\"something\"",
    "\"nothing\"",
];
const PRED_START: &[&str] = &["\"is\"", "verb (3rd person singular)", "\"does\""];
const OBJECT_START: &[&str] = &[
    "proper name",
    "\"a\"",
    "\"everything\"",
    "\"something\"",
    "\"nothing\"",
    "\"it\"",
    "\"itself\"",
    "\"at\"",
    "\"exactly\"",
];

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn end_offset(&self) -> usize {
        self.tokens
            .last()
            .map(|t| t.offset + t.surface.chars().count())
            .unwrap_or(0)
    }

    fn unexpected(&self, t: &Token, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax {
            offset: t.offset,
            found: t.surface.clone(),
            expected: expected.to_vec(),
        }
    }

    fn next_or_err(&mut self, expected: &[&'static str]) -> Result<&'t Token, ParseError> {
        match self.peek() {
            Some(_) => Ok(self.bump()),
            None => Err(ParseError::Syntax {
                offset: self.end_offset(),
                found: "end of input".into(),
                expected: expected.to_vec(),
            }),
        }
    }

    fn eat_keyword(&mut self, kw: Keyword) -> bool {
        if self.peek().is_some_and(|t| t.is_keyword(kw)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: Keyword, label: &'static str) -> Result<(), ParseError> {
        let t = self.next_or_err(&[label])?;
        if t.is_keyword(kw) {
            Ok(())
        } else {
            Err(self.unexpected(t, &[label]))
        }
    }

    fn expect_kind(
        &mut self,
        kind: TokenKind,
        label: &'static str,
    ) -> Result<&'t Token, ParseError> {
        let t = self.next_or_err(&[label])?;
        if t.kind == kind {
            Ok(t)
        } else {
            Err(self.unexpected(t, &[label]))
        }
    }

    fn expect_period(&mut self) -> Result<(), ParseError> {
        self.expect_kind(TokenKind::Period, "\".\"").map(|_| ())
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        if self.eat_keyword(Keyword::If) {
            let antecedent = self.simple()?;
            if !self.peek().is_some_and(|t| t.is_keyword(Keyword::Then)) {
                if let Some(t) = self.peek() {
                    let mut expected = vec!["\"then\""];
                    if antecedent.predicates.connective().is_none() {
                        expected.extend(["\"and\"", "\"or\""]);
                    }
                    return Err(self.unexpected(t, &expected));
                }
            }
            self.expect_keyword(Keyword::Then, "\"then\"")?;
            let consequent = self.simple()?;
            Ok(Statement::Conditional {
                antecedent,
                consequent,
            })
        } else {
            Ok(Statement::Simple(self.simple()?))
        }
    }

    fn simple(&mut self) -> Result<Sentence, ParseError> {
        let subject = self.subject()?;
        let it_bound = subject.binds_it();
        let predicates = self.predcoord(it_bound)?;
        Ok(Sentence {
            subject,
            predicates,
        })
    }

    fn subject(&mut self) -> Result<Subject, ParseError> {
        let t = self.next_or_err(SUBJECT_START)?;
        match t.kind {
            TokenKind::ProperName => Ok(Subject::Proper(t.surface.clone())),
            TokenKind::Keyword(kw @ (Keyword::A | Keyword::Every | Keyword::No)) => {
                let det = match kw {
                    Keyword::A => Determiner::A,
                    Keyword::Every => Determiner::Every,
                    _ => Determiner::No,
                };
                let noun = self.expect_kind(TokenKind::NounSg, "singular noun")?;
                Ok(Subject::Determined {
                    det,
                    noun: noun.surface.clone(),
                })
            }
            TokenKind::Keyword(
                kw @ (Keyword::Everything | Keyword::Something | Keyword::Nothing),
            ) => {
                let quantifier = quant_word(kw);
                let relative = if self.eat_keyword(Keyword::That) {
                    Some(self.relclause()?)
                } else {
                    None
                };
                Ok(Subject::Quantified {
                    quantifier,
                    relative,
                })
            }
            _ => Err(self.unexpected(t, SUBJECT_START)),
        }
    }

    fn relclause(&mut self) -> Result<RelClause, ParseError> {
        let t = self.next_or_err(&["verb (3rd person singular)", "\"is\""])?;
        match t.kind {
            TokenKind::Verb3Sg => Ok(RelClause::Active {
                verb: t.surface.clone(),
                object: self.object(false)?,
            }),
            TokenKind::Keyword(Keyword::Is) => {
                let pp = self.expect_kind(TokenKind::VerbPp, "past participle")?;
                self.expect_keyword(Keyword::By, "\"by\"")?;
                Ok(RelClause::Passive {
                    participle: pp.surface.clone(),
                    agent: self.object(false)?,
                })
            }
            _ => Err(self.unexpected(t, &["verb (3rd person singular)", "\"is\""])),
        }
    }

    fn predcoord(&mut self, it_bound: bool) -> Result<Coordination, ParseError> {
        let mut items = vec![self.pred(it_bound)?];
        let mut connective = None;
        while let Some(t) = self.peek() {
            let conn = match t.kind {
                TokenKind::Keyword(Keyword::And) => Connective::And,
                TokenKind::Keyword(Keyword::Or) => Connective::Or,
                _ => break,
            };
            match connective {
                None => connective = Some(conn),
                Some(c) if c != conn => {
                    return Err(ParseError::MixedConnective { offset: t.offset })
                }
                Some(_) => {}
            }
            self.pos += 1;
            items.push(self.pred(it_bound)?);
        }
        Ok(match connective {
            Some(c) => Coordination::joined(c, items),
            None => Coordination::single(items.pop().expect("one predicate")),
        })
    }

    fn pred(&mut self, it_bound: bool) -> Result<Predicate, ParseError> {
        let t = self.next_or_err(PRED_START)?;
        match t.kind {
            TokenKind::Keyword(Keyword::Is) => {
                let negated = self.eat_keyword(Keyword::Not);
                if !self.peek().is_some_and(|t| t.is_keyword(Keyword::A)) {
                    let expected: &[&str] = if negated {
                        &["\"a\""]
                    } else {
                        &["\"not\"", "\"a\""]
                    };
                    let t = self.next_or_err(expected)?;
                    return Err(self.unexpected(t, expected));
                }
                self.pos += 1;
                let noun = self.expect_kind(TokenKind::NounSg, "singular noun")?;
                Ok(Predicate::Copula {
                    negated,
                    noun: noun.surface.clone(),
                })
            }
            TokenKind::Verb3Sg => Ok(Predicate::Verb {
                verb: t.surface.clone(),
                object: self.object(it_bound)?,
            }),
            TokenKind::Keyword(Keyword::Does) => {
                self.expect_keyword(Keyword::Not, "\"not\"")?;
                let verb = self.expect_kind(TokenKind::VerbBase, "verb (base form)")?;
                Ok(Predicate::NegatedVerb {
                    verb: verb.surface.clone(),
                    object: self.object(it_bound)?,
                })
            }
            _ => Err(self.unexpected(t, PRED_START)),
        }
    }

    fn object(&mut self, it_bound: bool) -> Result<Object, ParseError> {
        let t = self.next_or_err(OBJECT_START)?;
        match t.kind {
            TokenKind::ProperName => Ok(Object::Proper(t.surface.clone())),
            TokenKind::Keyword(Keyword::A) => {
                let noun = self.expect_kind(TokenKind::NounSg, "singular noun")?;
                Ok(Object::Indefinite(noun.surface.clone()))
            }
            TokenKind::Keyword(Keyword::Nothing)
                if self.peek().is_some_and(|n| n.is_keyword(Keyword::But)) =>
            {
                self.pos += 1;
                let noun = self.expect_kind(TokenKind::NounPl, "plural noun")?;
                Ok(Object::NothingBut(noun.surface.clone()))
            }
            TokenKind::Keyword(
                kw @ (Keyword::Everything | Keyword::Something | Keyword::Nothing),
            ) => Ok(Object::Quantified(quant_word(kw))),
            TokenKind::Keyword(Keyword::It) => {
                if it_bound {
                    Ok(Object::It)
                } else {
                    Err(ParseError::UnboundAnaphor {
                        word: t.surface.clone(),
                        offset: t.offset,
                    })
                }
            }
            TokenKind::Keyword(Keyword::Itself) => Ok(Object::Itself),
            TokenKind::Keyword(Keyword::At) => {
                let b = self.next_or_err(&["\"most\"", "\"least\""])?;
                let bound = match b.kind {
                    TokenKind::Keyword(Keyword::Most) => Bound::AtMost,
                    TokenKind::Keyword(Keyword::Least) => Bound::AtLeast,
                    _ => return Err(self.unexpected(b, &["\"most\"", "\"least\""])),
                };
                self.cardinal(bound)
            }
            TokenKind::Keyword(Keyword::Exactly) => self.cardinal(Bound::Exactly),
            _ => Err(self.unexpected(t, OBJECT_START)),
        }
    }

    fn cardinal(&mut self, bound: Bound) -> Result<Object, ParseError> {
        let t = self.next_or_err(&["number"])?;
        let TokenKind::Number(count) = t.kind else {
            return Err(self.unexpected(t, &["number"]));
        };
        let (noun_kind, thing_kw, expected): (_, _, &[&str]) = if count == 1 {
            (
                TokenKind::NounSg,
                Keyword::Thing,
                &["singular noun", "\"thing\""],
            )
        } else {
            (
                TokenKind::NounPl,
                Keyword::Things,
                &["plural noun", "\"things\""],
            )
        };
        let t = self.next_or_err(expected)?;
        let noun = if t.kind == noun_kind {
            Some(t.surface.clone())
        } else if t.is_keyword(thing_kw) {
            None
        } else {
            return Err(self.unexpected(t, expected));
        };
        Ok(Object::Cardinal { bound, count, noun })
    }
}

fn quant_word(kw: Keyword) -> QuantWord {
    match kw {
        Keyword::Everything => QuantWord::Everything,
        Keyword::Something => QuantWord::Something,
        _ => QuantWord::Nothing,
    }
}
