//! Reference semantics by exhaustive grounding.
//!
//! Every quantifier is expanded into an explicit conjunction or disjunction
//! over the individuals, and every counting quantifier into a disjunction
//! over all subsets of the domain with the right cardinality. Atoms are
//! decided through the world's own lookups and the resulting ground tree is
//! folded without short-circuiting. Cost is exponential in the domain size
//! for counting quantifiers, so the oracle is meant for small worlds.

use std::collections::HashMap;

use super::eval::{check_vocabulary, EvalError};
use super::formula::{CountKind, Formula, Term, Var};
use crate::world::Ontograph;

/// Largest domain the oracle will ground.
pub const MAX_ORACLE_DOMAIN: usize = 12;

#[derive(Debug, Clone)]
enum Ground {
    Atom(bool),
    Not(Box<Ground>),
    All(Vec<Ground>),
    Any(Vec<Ground>),
}

impl Ground {
    fn fold(&self) -> bool {
        match self {
            Ground::Atom(b) => *b,
            Ground::Not(g) => !g.fold(),
            Ground::All(gs) => gs.iter().fold(true, |acc, g| acc & g.fold()),
            Ground::Any(gs) => gs.iter().fold(false, |acc, g| acc | g.fold()),
        }
    }
}

struct Grounder<'w> {
    world: &'w Ontograph,
}

impl Grounder<'_> {
    fn resolve(&self, t: &Term, subst: &HashMap<Var, String>) -> String {
        match t {
            Term::Var(v) => subst[v].clone(),
            Term::Const(label) => self
                .world
                .individual_by_label(label)
                .expect("constants checked before grounding")
                .id
                .clone(),
        }
    }

    fn ground(&self, f: &Formula, subst: &mut HashMap<Var, String>) -> Ground {
        match f {
            Formula::Type { type_name, term } => {
                let id = self.resolve(term, subst);
                Ground::Atom(
                    self.world
                        .holds_type(type_name, &id)
                        .expect("vocabulary checked"),
                )
            }
            Formula::Rel {
                relation,
                source,
                target,
            } => {
                let s = self.resolve(source, subst);
                let t = self.resolve(target, subst);
                Ground::Atom(
                    self.world
                        .holds_relation(relation, &s, &t)
                        .expect("vocabulary checked"),
                )
            }
            Formula::Not(g) => Ground::Not(Box::new(self.ground(g, subst))),
            Formula::And(fs) => Ground::All(fs.iter().map(|g| self.ground(g, subst)).collect()),
            Formula::Or(fs) => Ground::Any(fs.iter().map(|g| self.ground(g, subst)).collect()),
            Formula::Implies(a, b) => Ground::Any(vec![
                Ground::Not(Box::new(self.ground(a, subst))),
                self.ground(b, subst),
            ]),
            Formula::ForAll(v, g) => Ground::All(self.instances(*v, g, subst)),
            Formula::Exists(v, g) => Ground::Any(self.instances(*v, g, subst)),
            Formula::Count { kind, n, var, body } => {
                let members = self.instances(*var, body, subst);
                let size = members.len();
                let mut patterns = Vec::new();
                for mask in 0u64..(1u64 << size) {
                    let chosen = mask.count_ones();
                    let keep = match kind {
                        CountKind::AtMost => chosen <= *n,
                        CountKind::AtLeast => chosen >= *n,
                        CountKind::Exactly => chosen == *n,
                    };
                    if !keep {
                        continue;
                    }
                    // the subset is exactly the set of satisfying individuals
                    let exact = members
                        .iter()
                        .enumerate()
                        .map(|(i, g)| {
                            if mask & (1 << i) != 0 {
                                g.clone()
                            } else {
                                Ground::Not(Box::new(g.clone()))
                            }
                        })
                        .collect();
                    patterns.push(Ground::All(exact));
                }
                Ground::Any(patterns)
            }
        }
    }

    fn instances(&self, v: Var, body: &Formula, subst: &mut HashMap<Var, String>) -> Vec<Ground> {
        let saved = subst.remove(&v);
        let out = self
            .world
            .individuals
            .iter()
            .map(|ind| {
                subst.insert(v, ind.id.clone());
                self.ground(body, subst)
            })
            .collect();
        subst.remove(&v);
        if let Some(prev) = saved {
            subst.insert(v, prev);
        }
        out
    }
}

/// Independent reference evaluation of a closed formula.
pub fn ground_oracle(formula: &Formula, world: &Ontograph) -> Result<bool, EvalError> {
    check_vocabulary(formula, world)?;
    if world.individuals.len() > MAX_ORACLE_DOMAIN {
        return Err(EvalError::DomainTooLarge(world.individuals.len()));
    }
    let g = Grounder { world }.ground(formula, &mut HashMap::new());
    Ok(g.fold())
}
