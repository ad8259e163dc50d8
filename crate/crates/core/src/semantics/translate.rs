//! Statement trees to formulas.
//!
//! The subject quantifier takes widest scope, then the predicate
//! coordination, then each object quantifier. "does not" negates the whole
//! verb phrase including its object quantifier.

use thiserror::Error;

use super::formula::{CountKind, Formula, Term, Var};
use crate::lexicon::Lexicon;
use crate::parser::ast::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("no noun entry for {0:?}")]
    UnknownNoun(String),
    #[error("no verb entry for {0:?}")]
    UnknownVerb(String),
    #[error("no proper name entry for {0:?}")]
    UnknownName(String),
    #[error("\"it\" used without a relative clause ending in \"something\"")]
    UnboundIt,
}

pub fn to_formula(statement: &Statement, lexicon: &Lexicon) -> Result<Formula, TranslateError> {
    let mut tr = Translator { lexicon, next: 0 };
    match statement {
        Statement::Simple(s) => tr.sentence(s),
        Statement::Conditional {
            antecedent,
            consequent,
        } => {
            let a = tr.sentence(antecedent)?;
            let c = tr.sentence(consequent)?;
            Ok(Formula::implies(a, c))
        }
    }
}

struct Translator<'l> {
    lexicon: &'l Lexicon,
    next: u32,
}

/// Which side of the relation the clause's subject fills.
#[derive(Clone, Copy)]
enum Voice {
    Active,
    Passive,
}

impl Voice {
    fn atom(self, relation: &str, subject: Term, object: Term) -> Formula {
        match self {
            Voice::Active => Formula::rel_atom(relation, subject, object),
            Voice::Passive => Formula::rel_atom(relation, object, subject),
        }
    }
}

impl Translator<'_> {
    fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        v
    }

    fn type_of(&self, noun: &str) -> Result<&str, TranslateError> {
        self.lexicon
            .noun(noun)
            .map(|e| e.type_name.as_str())
            .ok_or_else(|| TranslateError::UnknownNoun(noun.to_owned()))
    }

    fn relation_of(&self, verb: &str) -> Result<&str, TranslateError> {
        self.lexicon
            .verb(verb)
            .map(|e| e.relation.as_str())
            .ok_or_else(|| TranslateError::UnknownVerb(verb.to_owned()))
    }

    fn constant(&self, name: &str) -> Result<Term, TranslateError> {
        self.lexicon
            .name(name)
            .map(|e| Term::Const(e.label.clone()))
            .ok_or_else(|| TranslateError::UnknownName(name.to_owned()))
    }

    fn sentence(&mut self, s: &Sentence) -> Result<Formula, TranslateError> {
        match &s.subject {
            Subject::Proper(name) => {
                let t = self.constant(name)?;
                self.predicates(&s.predicates, &t, None)
            }
            Subject::Determined { det, noun } => {
                let x = self.fresh();
                let restrictor = Formula::type_atom(self.type_of(noun)?, Term::Var(x));
                let body = self.predicates(&s.predicates, &Term::Var(x), None)?;
                Ok(match det {
                    Determiner::Every => Formula::forall(x, Formula::implies(restrictor, body)),
                    Determiner::A => Formula::exists(x, Formula::And(vec![restrictor, body])),
                    Determiner::No => {
                        Formula::forall(x, Formula::implies(restrictor, Formula::not(body)))
                    }
                })
            }
            Subject::Quantified {
                quantifier,
                relative,
            } => {
                let x = self.fresh();
                let xt = Term::Var(x);
                let uses_it = s
                    .predicates
                    .items()
                    .iter()
                    .any(|p| p.object() == Some(&Object::It));

                // With "it", the relative-clause object becomes a variable
                // quantified alongside the subject so the predicates can see it.
                let (restrictor, it_var) = match relative {
                    None => (None, None),
                    Some(rc)
                        if uses_it && *rc.object() == Object::Quantified(QuantWord::Something) =>
                    {
                        let y = self.fresh();
                        let (rel, voice) = self.clause_relation(rc)?;
                        (Some(voice.atom(rel, xt.clone(), Term::Var(y))), Some(y))
                    }
                    Some(rc) => (Some(self.relclause(rc, &xt)?), None),
                };
                let body = self.predicates(&s.predicates, &xt, it_var)?;
                let universal = |inner: Formula| match it_var {
                    Some(y) => Formula::forall(x, Formula::forall(y, inner)),
                    None => Formula::forall(x, inner),
                };
                Ok(match (quantifier, restrictor) {
                    (QuantWord::Everything, None) => Formula::forall(x, body),
                    (QuantWord::Everything, Some(r)) => universal(Formula::implies(r, body)),
                    (QuantWord::Nothing, None) => Formula::forall(x, Formula::not(body)),
                    (QuantWord::Nothing, Some(r)) => {
                        universal(Formula::implies(r, Formula::not(body)))
                    }
                    (QuantWord::Something, None) => Formula::exists(x, body),
                    (QuantWord::Something, Some(r)) => {
                        let inner = Formula::And(vec![r, body]);
                        match it_var {
                            Some(y) => Formula::exists(x, Formula::exists(y, inner)),
                            None => Formula::exists(x, inner),
                        }
                    }
                })
            }
        }
    }

    fn clause_relation<'a>(&'a self, rc: &RelClause) -> Result<(&'a str, Voice), TranslateError> {
        Ok(match rc {
            RelClause::Active { verb, .. } => (self.relation_of(verb)?, Voice::Active),
            RelClause::Passive { participle, .. } => {
                (self.relation_of(participle)?, Voice::Passive)
            }
        })
    }

    fn relclause(&mut self, rc: &RelClause, subject: &Term) -> Result<Formula, TranslateError> {
        let (rel, voice) = self.clause_relation(rc)?;
        let rel = rel.to_owned();
        self.object(&rel, voice, subject, rc.object(), None)
    }

    fn predicates(
        &mut self,
        coord: &Coordination,
        subject: &Term,
        it_var: Option<Var>,
    ) -> Result<Formula, TranslateError> {
        let mut parts = coord
            .items()
            .iter()
            .map(|p| self.predicate(p, subject, it_var))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match coord.connective() {
            None => parts.pop().expect("coordination is nonempty"),
            Some(Connective::And) => Formula::And(parts),
            Some(Connective::Or) => Formula::Or(parts),
        })
    }

    fn predicate(
        &mut self,
        p: &Predicate,
        subject: &Term,
        it_var: Option<Var>,
    ) -> Result<Formula, TranslateError> {
        match p {
            Predicate::Copula { negated, noun } => {
                let atom = Formula::type_atom(self.type_of(noun)?, subject.clone());
                Ok(if *negated { Formula::not(atom) } else { atom })
            }
            Predicate::Verb { verb, object } => {
                let rel = self.relation_of(verb)?.to_owned();
                self.object(&rel, Voice::Active, subject, object, it_var)
            }
            Predicate::NegatedVerb { verb, object } => {
                let rel = self.relation_of(verb)?.to_owned();
                Ok(Formula::not(self.object(
                    &rel,
                    Voice::Active,
                    subject,
                    object,
                    it_var,
                )?))
            }
        }
    }

    fn object(
        &mut self,
        rel: &str,
        voice: Voice,
        subject: &Term,
        object: &Object,
        it_var: Option<Var>,
    ) -> Result<Formula, TranslateError> {
        let s = subject.clone();
        Ok(match object {
            Object::Proper(name) => voice.atom(rel, s, self.constant(name)?),
            Object::Indefinite(noun) => {
                let ty = self.type_of(noun)?.to_owned();
                let y = self.fresh();
                Formula::exists(
                    y,
                    Formula::And(vec![
                        Formula::type_atom(&ty, Term::Var(y)),
                        voice.atom(rel, s, Term::Var(y)),
                    ]),
                )
            }
            Object::Quantified(q) => {
                let y = self.fresh();
                let atom = voice.atom(rel, s, Term::Var(y));
                match q {
                    QuantWord::Something => Formula::exists(y, atom),
                    QuantWord::Nothing => Formula::not(Formula::exists(y, atom)),
                    QuantWord::Everything => Formula::forall(y, atom),
                }
            }
            Object::It => {
                let y = it_var.ok_or(TranslateError::UnboundIt)?;
                voice.atom(rel, s, Term::Var(y))
            }
            Object::Itself => voice.atom(rel, s.clone(), s),
            Object::NothingBut(nouns) => {
                let ty = self.type_of(nouns)?.to_owned();
                let y = self.fresh();
                Formula::forall(
                    y,
                    Formula::implies(
                        voice.atom(rel, s, Term::Var(y)),
                        Formula::type_atom(&ty, Term::Var(y)),
                    ),
                )
            }
            Object::Cardinal { bound, count, noun } => {
                let ty = noun
                    .as_deref()
                    .map(|n| self.type_of(n))
                    .transpose()?
                    .map(str::to_owned);
                let y = self.fresh();
                let atom = voice.atom(rel, s, Term::Var(y));
                let body = match ty {
                    Some(ty) => Formula::And(vec![Formula::type_atom(&ty, Term::Var(y)), atom]),
                    None => atom,
                };
                let kind = match bound {
                    Bound::AtMost => CountKind::AtMost,
                    Bound::AtLeast => CountKind::AtLeast,
                    Bound::Exactly => CountKind::Exactly,
                };
                Formula::count(kind, *count, y, body)
            }
        })
    }
}
