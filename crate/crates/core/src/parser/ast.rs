//! Syntax tree of accepted statements. Words are kept in their surface
//! spelling; the lexicon resolves them to legend names.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    Simple(Sentence),
    Conditional {
        antecedent: Sentence,
        consequent: Sentence,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub subject: Subject,
    pub predicates: Coordination,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Determiner {
    A,
    Every,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantWord {
    Everything,
    Something,
    Nothing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Proper(String),
    Determined {
        det: Determiner,
        noun: String,
    },
    Quantified {
        quantifier: QuantWord,
        relative: Option<RelClause>,
    },
}

impl Subject {
    /// The relative clause ends in "something", which makes "it" available
    /// to the predicates.
    pub fn binds_it(&self) -> bool {
        matches!(
            self,
            Subject::Quantified {
                relative: Some(rc),
                ..
            } if *rc.object() == Object::Quantified(QuantWord::Something)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelClause {
    /// `that loves a woman`
    Active { verb: String, object: Object },
    /// `that is loved by a woman`
    Passive { participle: String, agent: Object },
}

impl RelClause {
    pub fn object(&self) -> &Object {
        match self {
            RelClause::Active { object, .. } => object,
            RelClause::Passive { agent, .. } => agent,
        }
    }

    pub fn verb(&self) -> &str {
        match self {
            RelClause::Active { verb, .. } => verb,
            RelClause::Passive { participle, .. } => participle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Connective {
    And,
    Or,
}

/// A flat predicate list joined by a single connective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coordination {
    connective: Option<Connective>,
    items: Vec<Predicate>,
}

impl Coordination {
    pub fn single(pred: Predicate) -> Self {
        Coordination {
            connective: None,
            items: vec![pred],
        }
    }

    /// Panics when `items` is empty.
    pub fn joined(connective: Connective, items: Vec<Predicate>) -> Self {
        assert!(
            !items.is_empty(),
            "coordination needs at least one predicate"
        );
        if items.len() == 1 {
            return Coordination {
                connective: None,
                items,
            };
        }
        Coordination {
            connective: Some(connective),
            items,
        }
    }

    pub fn connective(&self) -> Option<Connective> {
        self.connective
    }

    pub fn items(&self) -> &[Predicate] {
        &self.items
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    /// `is [not] a NOUN`
    Copula { negated: bool, noun: String },
    /// `VERB object`, verb in third person singular
    Verb { verb: String, object: Object },
    /// `does not VERB object`, verb in base form
    NegatedVerb { verb: String, object: Object },
}

impl Predicate {
    pub fn object(&self) -> Option<&Object> {
        match self {
            Predicate::Copula { .. } => None,
            Predicate::Verb { object, .. } | Predicate::NegatedVerb { object, .. } => Some(object),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost,
    AtLeast,
    Exactly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Object {
    Proper(String),
    /// `a NOUN`
    Indefinite(String),
    Quantified(QuantWord),
    It,
    Itself,
    /// `nothing but NOUNS`
    NothingBut(String),
    /// `at least 2 presents`; `noun` is `None` for "thing"/"things".
    Cardinal {
        bound: Bound,
        count: u32,
        noun: Option<String>,
    },
}

impl Statement {
    pub fn sentences(&self) -> Vec<&Sentence> {
        match self {
            Statement::Simple(s) => vec![s],
            Statement::Conditional {
                antecedent,
                consequent,
            } => vec![antecedent, consequent],
        }
    }
}

// Unparsing. Output re-parses to the identical tree.

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match self {
            Statement::Simple(s) => s.to_string(),
            Statement::Conditional {
                antecedent,
                consequent,
            } => format!("if {antecedent} then {consequent}"),
        };
        let mut chars = body.chars();
        if let Some(first) = chars.next() {
            write!(f, "{}{}", first.to_ascii_uppercase(), chars.as_str())?;
        }
        f.write_str(".")
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.subject)?;
        let sep = match self.predicates.connective {
            Some(Connective::And) => " and ",
            Some(Connective::Or) => " or ",
            None => "",
        };
        for (i, p) in self.predicates.items.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Display for QuantWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuantWord::Everything => "everything",
            QuantWord::Something => "something",
            QuantWord::Nothing => "nothing",
        })
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Proper(name) => f.write_str(name),
            Subject::Determined { det, noun } => {
                let d = match det {
                    Determiner::A => "a",
                    Determiner::Every => "every",
                    Determiner::No => "no",
                };
                write!(f, "{d} {noun}")
            }
            Subject::Quantified {
                quantifier,
                relative,
            } => {
                write!(f, "{quantifier}")?;
                match relative {
                    Some(RelClause::Active { verb, object }) => write!(f, " that {verb} {object}"),
                    Some(RelClause::Passive { participle, agent }) => {
                        write!(f, " that is {participle} by {agent}")
                    }
                    None => Ok(()),
                }
            }
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Copula {
                negated: true,
                noun,
            } => write!(f, "is not a {noun}"),
            Predicate::Copula {
                negated: false,
                noun,
            } => write!(f, "is a {noun}"),
            Predicate::Verb { verb, object } => write!(f, "{verb} {object}"),
            Predicate::NegatedVerb { verb, object } => write!(f, "does not {verb} {object}"),
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Proper(name) => f.write_str(name),
            Object::Indefinite(noun) => write!(f, "a {noun}"),
            Object::Quantified(q) => write!(f, "{q}"),
            Object::It => f.write_str("it"),
            Object::Itself => f.write_str("itself"),
            Object::NothingBut(nouns) => write!(f, "nothing but {nouns}"),
            Object::Cardinal { bound, count, noun } => {
                let b = match bound {
                    Bound::AtMost => "at most",
                    Bound::AtLeast => "at least",
                    Bound::Exactly => "exactly",
                };
                let n = match (noun, count) {
                    (Some(noun), _) => noun.as_str(),
                    (None, 1) => "thing",
                    (None, _) => "things",
                };
                write!(f, "{b} {count} {n}")
            }
        }
    }
}
