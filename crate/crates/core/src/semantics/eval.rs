//! Finite-domain model checking under the closed-world reading.

use std::collections::HashMap;

use thiserror::Error;

use super::formula::{Formula, Term, Var};
use crate::world::Ontograph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("type {0:?} is not declared in the legend")]
    UndeclaredType(String),
    #[error("relation {0:?} is not declared in the legend")]
    UndeclaredRelation(String),
    #[error("no individual is labeled {0:?}")]
    UnknownConstant(String),
    #[error("variable {0} is free")]
    FreeVariable(Var),
    #[error("domain of {0} individuals is too large for exhaustive grounding")]
    DomainTooLarge(usize),
}

/// Checks that the formula is closed and every name it mentions exists in
/// the world.
pub(crate) fn check_vocabulary(formula: &Formula, world: &Ontograph) -> Result<(), EvalError> {
    if let Some(v) = formula.free_vars().into_iter().next() {
        return Err(EvalError::FreeVariable(v));
    }
    let voc = formula.vocabulary();
    if let Some(t) = voc.types.iter().find(|t| !world.legend.has_type(t)) {
        return Err(EvalError::UndeclaredType(t.clone()));
    }
    if let Some(r) = voc.relations.iter().find(|r| !world.legend.has_relation(r)) {
        return Err(EvalError::UndeclaredRelation(r.clone()));
    }
    if let Some(c) = voc
        .constants
        .iter()
        .find(|c| world.individual_by_label(c).is_none())
    {
        return Err(EvalError::UnknownConstant(c.clone()));
    }
    Ok(())
}

/// Indexed view of a world: memberships as bit rows, relations as adjacency
/// matrices over individual positions.
struct Model<'w> {
    size: usize,
    types: HashMap<&'w str, Vec<bool>>,
    relations: HashMap<&'w str, Vec<bool>>,
    constants: HashMap<&'w str, usize>,
}

impl<'w> Model<'w> {
    fn new(world: &'w Ontograph) -> Self {
        let size = world.individuals.len();
        let position: HashMap<&str, usize> = world
            .individuals
            .iter()
            .enumerate()
            .map(|(i, ind)| (ind.id.as_str(), i))
            .collect();
        let mut types: HashMap<&str, Vec<bool>> = world
            .legend
            .types
            .iter()
            .map(|t| (t.name.as_str(), vec![false; size]))
            .collect();
        for (i, ind) in world.individuals.iter().enumerate() {
            for t in &ind.types {
                if let Some(row) = types.get_mut(t.as_str()) {
                    row[i] = true;
                }
            }
        }
        let mut relations: HashMap<&str, Vec<bool>> = world
            .legend
            .relations
            .iter()
            .map(|r| (r.name.as_str(), vec![false; size * size]))
            .collect();
        for inst in &world.relations {
            if let (Some(m), Some(&s), Some(&t)) = (
                relations.get_mut(inst.relation.as_str()),
                position.get(inst.source.as_str()),
                position.get(inst.target.as_str()),
            ) {
                m[s * size + t] = true;
            }
        }
        let constants = world
            .individuals
            .iter()
            .enumerate()
            .filter_map(|(i, ind)| ind.label.as_deref().map(|l| (l, i)))
            .collect();
        Model {
            size,
            types,
            relations,
            constants,
        }
    }

    fn term(&self, t: &Term, env: &[Option<usize>]) -> usize {
        match t {
            Term::Var(v) => env[v.0 as usize].expect("closed formula binds every variable"),
            Term::Const(c) => self.constants[c.as_str()],
        }
    }

    fn eval(&self, f: &Formula, env: &mut Vec<Option<usize>>) -> bool {
        match f {
            Formula::Type { type_name, term } => {
                self.types[type_name.as_str()][self.term(term, env)]
            }
            Formula::Rel {
                relation,
                source,
                target,
            } => {
                let s = self.term(source, env);
                let t = self.term(target, env);
                self.relations[relation.as_str()][s * self.size + t]
            }
            Formula::Not(g) => !self.eval(g, env),
            Formula::And(fs) => fs.iter().all(|g| self.eval(g, env)),
            Formula::Or(fs) => fs.iter().any(|g| self.eval(g, env)),
            Formula::Implies(a, b) => !self.eval(a, env) || self.eval(b, env),
            Formula::ForAll(v, g) => self.quantify(*v, g, env, true),
            Formula::Exists(v, g) => self.quantify(*v, g, env, false),
            Formula::Count { kind, n, var, body } => {
                let saved = bind(env, *var, None);
                let mut count = 0u32;
                for i in 0..self.size {
                    env[var.0 as usize] = Some(i);
                    if self.eval(body, env) {
                        count += 1;
                    }
                }
                env[var.0 as usize] = saved;
                kind.accepts(count, *n)
            }
        }
    }

    fn quantify(
        &self,
        v: Var,
        body: &Formula,
        env: &mut Vec<Option<usize>>,
        universal: bool,
    ) -> bool {
        let saved = bind(env, v, None);
        let mut result = universal;
        for i in 0..self.size {
            env[v.0 as usize] = Some(i);
            if self.eval(body, env) != universal {
                result = !universal;
                break;
            }
        }
        env[v.0 as usize] = saved;
        result
    }
}

fn bind(env: &mut Vec<Option<usize>>, v: Var, value: Option<usize>) -> Option<usize> {
    let i = v.0 as usize;
    if env.len() <= i {
        env.resize(i + 1, None);
    }
    std::mem::replace(&mut env[i], value)
}

/// Truth of a closed formula in the world. Quantifiers range over every
/// individual, persons and objects alike.
pub fn evaluate(formula: &Formula, world: &Ontograph) -> Result<bool, EvalError> {
    check_vocabulary(formula, world)?;
    let model = Model::new(world);
    Ok(model.eval(formula, &mut Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::formula::CountKind;
    use crate::world::{Individual, Legend, RelationDef, RelationInstance, TypeDef};

    fn world(edges: &[(&str, &str, &str)]) -> Ontograph {
        Ontograph {
            id: "w".into(),
            legend: Legend {
                types: vec![TypeDef {
                    name: "present".into(),
                    icon: "square_object".into(),
                }],
                relations: vec![
                    RelationDef {
                        name: "sees".into(),
                        style: "solid".into(),
                    },
                    RelationDef {
                        name: "buys".into(),
                        style: "dashed".into(),
                    },
                ],
            },
            individuals: vec![
                Individual::new("mary", Some("Mary"), &[]),
                Individual::new("tom", Some("Tom"), &[]),
                Individual::new("gift", None, &["present"]),
            ],
            relations: edges
                .iter()
                .map(|(r, s, t)| RelationInstance::new(r, s, t))
                .collect(),
            positions: None,
        }
    }

    fn mary() -> Term {
        Term::Const("Mary".into())
    }

    #[test]
    fn closed_world_negation() {
        let f = Formula::not(Formula::rel_atom("sees", mary(), Term::Const("Tom".into())));
        assert_eq!(evaluate(&f, &world(&[("sees", "tom", "mary")])), Ok(true));
    }

    #[test]
    fn exact_zero_count() {
        let y = Var(0);
        let f = Formula::count(
            CountKind::Exactly,
            0,
            y,
            Formula::rel_atom("sees", mary(), Term::Var(y)),
        );
        assert_eq!(evaluate(&f, &world(&[("sees", "mary", "tom")])), Ok(false));
        assert_eq!(evaluate(&f, &world(&[])), Ok(true));
    }

    #[test]
    fn vocabulary_errors() {
        let w = world(&[]);
        let f = Formula::rel_atom("admires", mary(), mary());
        assert_eq!(
            evaluate(&f, &w),
            Err(EvalError::UndeclaredRelation("admires".into()))
        );
        let f = Formula::type_atom("present", Term::Const("Bob".into()));
        assert_eq!(
            evaluate(&f, &w),
            Err(EvalError::UnknownConstant("Bob".into()))
        );
        let f = Formula::type_atom("present", Term::Var(Var(3)));
        assert_eq!(evaluate(&f, &w), Err(EvalError::FreeVariable(Var(3))));
    }

    #[test]
    fn empty_domain() {
        let mut w = world(&[]);
        w.individuals.clear();
        let x = Var(0);
        let atom = Formula::type_atom("present", Term::Var(x));
        assert_eq!(evaluate(&Formula::forall(x, atom.clone()), &w), Ok(true));
        assert_eq!(evaluate(&Formula::exists(x, atom), &w), Ok(false));
    }
}
