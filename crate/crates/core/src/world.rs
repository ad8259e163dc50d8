//! Ontographs: a legend of types and relations plus a finite mini world of
//! individuals, type memberships and relation arrows.
//!
//! A mini world carries complete information. Any membership or arrow that
//! is not listed is false, so every ground atom has a definite truth value.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeDef {
    pub name: String,
    pub icon: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDef {
    pub name: String,
    pub style: String,
}

/// Type and relation vocabulary of an ontograph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Legend {
    pub types: Vec<TypeDef>,
    pub relations: Vec<RelationDef>,
}

impl Legend {
    pub fn has_type(&self, name: &str) -> bool {
        self.types.iter().any(|t| t.name == name)
    }

    pub fn has_relation(&self, name: &str) -> bool {
        self.relations.iter().any(|r| r.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Individual {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub types: BTreeSet<String>,
}

impl Individual {
    pub fn new(id: &str, label: Option<&str>, types: &[&str]) -> Self {
        Individual {
            id: id.to_owned(),
            label: label.map(str::to_owned),
            types: types.iter().map(|t| (*t).to_owned()).collect(),
        }
    }

    /// Label when present, otherwise the id.
    pub fn display_name(&self) -> &str {
        self.label.as_deref().unwrap_or(&self.id)
    }
}

/// One arrow of the mini world.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationInstance {
    #[serde(rename = "rel")]
    pub relation: String,
    #[serde(rename = "from")]
    pub source: String,
    #[serde(rename = "to")]
    pub target: String,
}

impl RelationInstance {
    pub fn new(relation: &str, source: &str, target: &str) -> Self {
        RelationInstance {
            relation: relation.to_owned(),
            source: source.to_owned(),
            target: target.to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ontograph {
    pub id: String,
    pub legend: Legend,
    pub individuals: Vec<Individual>,
    pub relations: Vec<RelationInstance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<BTreeMap<String, (u32, u32)>>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed ontograph file: {0}")]
    Json(#[from] serde_json::Error),
}

impl Ontograph {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical file form: fixed key order, two-space indentation,
    /// individuals sorted by id, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut canonical = self.clone();
        canonical.individuals.sort_by(|a, b| a.id.cmp(&b.id));
        let mut out = serde_json::to_string_pretty(&canonical).expect("ontograph serializes");
        out.push('\n');
        out
    }

    pub fn individual(&self, id: &str) -> Option<&Individual> {
        self.individuals.iter().find(|i| i.id == id)
    }

    pub fn individual_by_label(&self, label: &str) -> Option<&Individual> {
        self.individuals
            .iter()
            .find(|i| i.label.as_deref() == Some(label))
    }

    /// Closed-world type membership lookup.
    pub fn holds_type(&self, type_name: &str, individual: &str) -> Result<bool, LookupError> {
        if !self.legend.has_type(type_name) {
            return Err(LookupError::UndeclaredType(type_name.to_owned()));
        }
        let ind = self
            .individual(individual)
            .ok_or_else(|| LookupError::UnknownIndividual(individual.to_owned()))?;
        Ok(ind.types.contains(type_name))
    }

    /// Closed-world relation lookup: true iff the arrow is drawn.
    pub fn holds_relation(
        &self,
        relation: &str,
        source: &str,
        target: &str,
    ) -> Result<bool, LookupError> {
        if !self.legend.has_relation(relation) {
            return Err(LookupError::UndeclaredRelation(relation.to_owned()));
        }
        for id in [source, target] {
            if self.individual(id).is_none() {
                return Err(LookupError::UnknownIndividual(id.to_owned()));
            }
        }
        Ok(self
            .relations
            .iter()
            .any(|r| r.relation == relation && r.source == source && r.target == target))
    }

    /// Every invariant violation; empty iff the ontograph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |code, element: &str, message: String| {
            out.push(Violation {
                code,
                element: element.to_owned(),
                message,
            })
        };

        if !is_identifier(&self.id) {
            push(
                ViolationCode::InvalidIdentifier,
                &self.id,
                "ontograph id".into(),
            );
        }

        let mut type_names = HashSet::new();
        for t in &self.legend.types {
            if !is_identifier(&t.name) {
                push(
                    ViolationCode::InvalidIdentifier,
                    &t.name,
                    "type name".into(),
                );
            }
            if !is_identifier(&t.icon) {
                push(ViolationCode::InvalidIdentifier, &t.icon, "icon id".into());
            }
            if !type_names.insert(t.name.as_str()) {
                push(
                    ViolationCode::DuplicateType,
                    &t.name,
                    "type declared twice".into(),
                );
            }
        }
        let mut relation_names = HashSet::new();
        for r in &self.legend.relations {
            if !is_identifier(&r.name) {
                push(
                    ViolationCode::InvalidIdentifier,
                    &r.name,
                    "relation name".into(),
                );
            }
            if !is_identifier(&r.style) {
                push(
                    ViolationCode::InvalidIdentifier,
                    &r.style,
                    "arrow style".into(),
                );
            }
            if !relation_names.insert(r.name.as_str()) {
                push(
                    ViolationCode::DuplicateRelation,
                    &r.name,
                    "relation declared twice".into(),
                );
            }
            if type_names.contains(r.name.as_str()) {
                push(
                    ViolationCode::NameClash,
                    &r.name,
                    "name declared both as type and relation".into(),
                );
            }
        }

        let mut ids = HashSet::new();
        let mut labels = HashSet::new();
        for ind in &self.individuals {
            if !is_identifier(&ind.id) {
                push(
                    ViolationCode::InvalidIdentifier,
                    &ind.id,
                    "individual id".into(),
                );
            }
            if !ids.insert(ind.id.as_str()) {
                push(
                    ViolationCode::DuplicateIndividual,
                    &ind.id,
                    "individual id reused".into(),
                );
            }
            if let Some(label) = &ind.label {
                if !is_proper_name(label) {
                    push(
                        ViolationCode::InvalidLabel,
                        &ind.id,
                        format!("label {label:?} is not a capitalized word"),
                    );
                }
                if !labels.insert(label.as_str()) {
                    push(ViolationCode::DuplicateLabel, label, "label reused".into());
                }
            }
            for t in &ind.types {
                if !type_names.contains(t.as_str()) {
                    push(
                        ViolationCode::UndeclaredType,
                        &ind.id,
                        format!("type {t:?} is not in the legend"),
                    );
                }
            }
        }

        let mut seen = HashSet::new();
        for rel in &self.relations {
            let element = format!("{}({},{})", rel.relation, rel.source, rel.target);
            if !relation_names.contains(rel.relation.as_str()) {
                push(
                    ViolationCode::UndeclaredRelation,
                    &element,
                    format!("relation {:?} is not in the legend", rel.relation),
                );
            }
            for end in [&rel.source, &rel.target] {
                if !ids.contains(end.as_str()) {
                    push(
                        ViolationCode::UnknownIndividual,
                        &element,
                        format!("no individual {end:?}"),
                    );
                }
            }
            if !seen.insert(rel) {
                push(
                    ViolationCode::DuplicateInstance,
                    &element,
                    "arrow listed twice".into(),
                );
            }
        }

        if let Some(positions) = &self.positions {
            let mut cells: HashMap<(u32, u32), &str> = HashMap::new();
            for (id, cell) in positions {
                if !ids.contains(id.as_str()) {
                    push(
                        ViolationCode::UnknownIndividual,
                        id,
                        "position for unknown individual".into(),
                    );
                }
                if let Some(other) = cells.insert(*cell, id) {
                    push(
                        ViolationCode::OverlappingPosition,
                        id,
                        format!("shares cell {cell:?} with {other:?}"),
                    );
                }
            }
        }

        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Nonempty, lowercase ASCII letters and underscores.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_lowercase() || b == b'_')
}

/// A capitalized ASCII word such as `Mary`.
pub fn is_proper_name(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b) if b.is_ascii_uppercase())
        && bytes.all(|b| b.is_ascii_alphabetic())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationCode {
    InvalidIdentifier,
    InvalidLabel,
    DuplicateType,
    DuplicateRelation,
    NameClash,
    DuplicateIndividual,
    DuplicateLabel,
    UndeclaredType,
    UndeclaredRelation,
    UnknownIndividual,
    DuplicateInstance,
    OverlappingPosition,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::InvalidIdentifier => "invalid_identifier",
            ViolationCode::InvalidLabel => "invalid_label",
            ViolationCode::DuplicateType => "duplicate_type",
            ViolationCode::DuplicateRelation => "duplicate_relation",
            ViolationCode::NameClash => "name_clash",
            ViolationCode::DuplicateIndividual => "duplicate_individual",
            ViolationCode::DuplicateLabel => "duplicate_label",
            ViolationCode::UndeclaredType => "undeclared_type",
            ViolationCode::UndeclaredRelation => "undeclared_relation",
            ViolationCode::UnknownIndividual => "unknown_individual",
            ViolationCode::DuplicateInstance => "duplicate_instance",
            ViolationCode::OverlappingPosition => "overlapping_position",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub element: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.code, self.element, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LookupError {
    #[error("type {0:?} is not declared in the legend")]
    UndeclaredType(String),
    #[error("relation {0:?} is not declared in the legend")]
    UndeclaredRelation(String),
    #[error("no individual with id {0:?}")]
    UnknownIndividual(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legend() -> Legend {
        Legend {
            types: vec![
                TypeDef {
                    name: "woman".into(),
                    icon: "circle_person".into(),
                },
                TypeDef {
                    name: "doctor".into(),
                    icon: "diamond".into(),
                },
            ],
            relations: vec![
                RelationDef {
                    name: "sees".into(),
                    style: "solid".into(),
                },
                RelationDef {
                    name: "loves".into(),
                    style: "dashed".into(),
                },
            ],
        }
    }

    fn world() -> Ontograph {
        Ontograph {
            id: "demo".into(),
            legend: legend(),
            individuals: vec![
                Individual::new("mary", Some("Mary"), &["woman"]),
                Individual::new("tom", Some("Tom"), &[]),
            ],
            relations: vec![
                RelationInstance::new("sees", "tom", "mary"),
                RelationInstance::new("loves", "tom", "tom"),
            ],
            positions: None,
        }
    }

    fn codes(w: &Ontograph) -> Vec<ViolationCode> {
        w.validate().into_iter().map(|v| v.code).collect()
    }

    #[test]
    fn empty_world_is_valid() {
        let w = Ontograph {
            id: "empty".into(),
            legend: legend(),
            individuals: vec![],
            relations: vec![],
            positions: None,
        };
        assert_eq!(w.validate(), vec![]);
    }

    #[test]
    fn undeclared_relation_is_reported() {
        let mut w = world();
        w.relations
            .push(RelationInstance::new("admires", "mary", "tom"));
        assert_eq!(codes(&w), vec![ViolationCode::UndeclaredRelation]);
    }

    #[test]
    fn duplicate_label_is_reported() {
        let mut w = world();
        w.individuals
            .push(Individual::new("mary_two", Some("Mary"), &[]));
        assert_eq!(codes(&w), vec![ViolationCode::DuplicateLabel]);
    }

    #[test]
    fn other_violations() {
        let mut w = world();
        w.relations
            .push(RelationInstance::new("sees", "tom", "mary"));
        w.relations
            .push(RelationInstance::new("sees", "tom", "bob"));
        w.individuals
            .push(Individual::new("Bad1", None, &["robot"]));
        w.legend.relations.push(RelationDef {
            name: "woman".into(),
            style: "solid".into(),
        });
        let got = codes(&w);
        for code in [
            ViolationCode::DuplicateInstance,
            ViolationCode::UnknownIndividual,
            ViolationCode::InvalidIdentifier,
            ViolationCode::UndeclaredType,
            ViolationCode::NameClash,
        ] {
            assert!(got.contains(&code), "missing {code} in {got:?}");
        }
    }

    #[test]
    fn closed_world_lookups() {
        let w = world();
        assert_eq!(w.holds_type("woman", "mary"), Ok(true));
        assert_eq!(w.holds_type("doctor", "mary"), Ok(false));
        assert_eq!(
            w.holds_type("woman", "sue"),
            Err(LookupError::UnknownIndividual("sue".into()))
        );
        assert_eq!(
            w.holds_type("robot", "mary"),
            Err(LookupError::UndeclaredType("robot".into()))
        );
        assert_eq!(w.holds_relation("sees", "mary", "tom"), Ok(false));
        assert_eq!(w.holds_relation("sees", "tom", "mary"), Ok(true));
        assert_eq!(w.holds_relation("loves", "tom", "tom"), Ok(true));
        assert!(w.holds_relation("admires", "tom", "tom").is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"id":"w","legend":{"types":[],"relations":[]},"individuals":[],"relations":[],"color":"red"}"#;
        assert!(Ontograph::from_json(text).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        let mut w = world();
        w.positions = Some(BTreeMap::from([
            ("mary".to_owned(), (0, 0)),
            ("tom".to_owned(), (1, 0)),
        ]));
        let text = w.to_canonical_json();
        let back = Ontograph::from_json(&text).unwrap();
        assert_eq!(back.to_canonical_json(), text);
        let key_order: Vec<usize> = [
            "\"id\"",
            "\"legend\"",
            "\"individuals\"",
            "\"relations\": [\n    {",
            "\"positions\"",
        ]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
        assert!(key_order.windows(2).all(|p| p[0] < p[1]), "{text}");
    }
}
