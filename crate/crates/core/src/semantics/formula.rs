use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
        match NAMES.get(self.0 as usize) {
            Some(n) => f.write_str(n),
            None => write!(f, "x{}", self.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Var(Var),
    /// An individual named by its label.
    Const(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => f.write_str(c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    AtMost,
    AtLeast,
    Exactly,
}

impl CountKind {
    pub fn accepts(self, count: u32, n: u32) -> bool {
        match self {
            CountKind::AtMost => count <= n,
            CountKind::AtLeast => count >= n,
            CountKind::Exactly => count == n,
        }
    }
}

/// First-order formulas with counting quantifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Type {
        type_name: String,
        term: Term,
    },
    Rel {
        relation: String,
        source: Term,
        target: Term,
    },
    Not(Box<Formula>),
    /// Conjunction; empty is true.
    And(Vec<Formula>),
    /// Disjunction; empty is false.
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ForAll(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
    Count {
        kind: CountKind,
        n: u32,
        var: Var,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn type_atom(type_name: &str, term: Term) -> Formula {
        Formula::Type {
            type_name: type_name.to_owned(),
            term,
        }
    }

    pub fn rel_atom(relation: &str, source: Term, target: Term) -> Formula {
        Formula::Rel {
            relation: relation.to_owned(),
            source,
            target,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, f: Formula) -> Formula {
        Formula::ForAll(v, Box::new(f))
    }

    pub fn exists(v: Var, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }

    pub fn count(kind: CountKind, n: u32, var: Var, body: Formula) -> Formula {
        Formula::Count {
            kind,
            n,
            var,
            body: Box::new(body),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut term = |t: &Term, bound: &Vec<Var>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(*v);
                }
            }
        };
        match self {
            Formula::Type { term: t, .. } => term(t, bound),
            Formula::Rel { source, target, .. } => {
                term(source, bound);
                term(target, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().for_each(|f| f.collect_free(bound, out))
            }
            Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::ForAll(v, f)
            | Formula::Exists(v, f)
            | Formula::Count {
                var: v, body: f, ..
            } => {
                bound.push(*v);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Type names, relation names and constants mentioned anywhere.
    pub fn vocabulary(&self) -> Vocabulary {
        let mut voc = Vocabulary::default();
        self.collect_vocabulary(&mut voc);
        voc
    }

    fn collect_vocabulary(&self, voc: &mut Vocabulary) {
        let term = |t: &Term, voc: &mut Vocabulary| {
            if let Term::Const(c) = t {
                voc.constants.insert(c.clone());
            }
        };
        match self {
            Formula::Type { type_name, term: t } => {
                voc.types.insert(type_name.clone());
                term(t, voc);
            }
            Formula::Rel {
                relation,
                source,
                target,
            } => {
                voc.relations.insert(relation.clone());
                term(source, voc);
                term(target, voc);
            }
            Formula::Not(f)
            | Formula::ForAll(_, f)
            | Formula::Exists(_, f)
            | Formula::Count { body: f, .. } => f.collect_vocabulary(voc),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_vocabulary(voc)),
            Formula::Implies(a, b) => {
                a.collect_vocabulary(voc);
                b.collect_vocabulary(voc);
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub types: BTreeSet<String>,
    pub relations: BTreeSet<String>,
    pub constants: BTreeSet<String>,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, fs: &[Formula], op: &str, empty: &str| {
            if fs.is_empty() {
                return f.write_str(empty);
            }
            f.write_str("(")?;
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{g}")?;
            }
            f.write_str(")")
        };
        match self {
            Formula::Type { type_name, term } => write!(f, "{type_name}({term})"),
            Formula::Rel {
                relation,
                source,
                target,
            } => write!(f, "{relation}({source}, {target})"),
            Formula::Not(g) => write!(f, "¬{g}"),
            Formula::And(fs) => join(f, fs, "∧", "⊤"),
            Formula::Or(fs) => join(f, fs, "∨", "⊥"),
            Formula::Implies(a, b) => write!(f, "({a} → {b})"),
            Formula::ForAll(v, g) => write!(f, "∀{v} {g}"),
            Formula::Exists(v, g) => write!(f, "∃{v} {g}"),
            Formula::Count { kind, n, var, body } => {
                let k = match kind {
                    CountKind::AtMost => "≤",
                    CountKind::AtLeast => "≥",
                    CountKind::Exactly => "=",
                };
                write!(f, "∃{k}{n}{var} {body}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables() {
        let x = Var(0);
        let y = Var(1);
        let body = Formula::rel_atom("sees", Term::Var(x), Term::Var(y));
        let open = Formula::exists(y, body.clone());
        assert_eq!(open.free_vars(), BTreeSet::from([x]));
        assert!(Formula::forall(x, open).is_closed());
        assert!(Formula::forall(x, Formula::count(CountKind::AtLeast, 1, y, body)).is_closed());
    }

    #[test]
    fn display() {
        let x = Var(0);
        let f = Formula::forall(
            x,
            Formula::implies(
                Formula::type_atom("man", Term::Var(x)),
                Formula::not(Formula::rel_atom(
                    "sees",
                    Term::Var(x),
                    Term::Const("Tom".into()),
                )),
            ),
        );
        assert_eq!(f.to_string(), "∀x (man(x) → ¬sees(x, Tom))");
    }
}
