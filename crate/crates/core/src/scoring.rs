//! Experiment metrics: per-statement answer categories, decision rate,
//! correctness among decisions, mean decision time and sign tests.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semantics::AnswerKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    True,
    False,
    DontKnow,
    TimeExceeded,
}

impl Answer {
    pub fn decision(self) -> Option<bool> {
        match self {
            Answer::True => Some(true),
            Answer::False => Some(false),
            Answer::DontKnow | Answer::TimeExceeded => None,
        }
    }
}

/// One line of the response log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResponseRecord {
    pub session: String,
    pub subject: String,
    pub ontograph: String,
    pub statement: String,
    pub answer: Answer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ResponseRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, Error)]
#[error("response log line {line}: {source}")]
pub struct LogError {
    pub line: usize,
    #[source]
    pub source: serde_json::Error,
}

/// Parses a newline-delimited log; blank lines are skipped.
pub fn read_log(text: &str) -> Result<Vec<ResponseRecord>, LogError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|source| LogError {
                line: i + 1,
                source,
            })
        })
        .collect()
}

pub fn write_log(records: &[ResponseRecord]) -> String {
    records.iter().map(|r| r.to_line() + "\n").collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    /// H1: the correct answer is chosen more often than chance.
    #[default]
    OneSided,
    TwoSided,
}

pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

/// P(X >= k) for X ~ Binomial(n, 1/2).
fn upper_tail(n: u64, k: u64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k > n {
        return 0.0;
    }
    if n <= 127 {
        // exact integer sum of binomial coefficients
        let mut c: u128 = 1;
        let mut sum: u128 = 0;
        for i in 0..=n {
            if i >= k {
                sum += c;
            }
            if i < n {
                c = c * (n - i) as u128 / (i + 1) as u128;
            }
        }
        return sum as f64 / 2f64.powi(n as i32);
    }
    let mut ln_pmf = -(n as f64) * std::f64::consts::LN_2;
    let mut sum = 0.0;
    for i in 0..=n {
        if i >= k {
            sum += ln_pmf.exp();
        }
        if i < n {
            ln_pmf += ((n - i) as f64).ln() - ((i + 1) as f64).ln();
        }
    }
    sum.min(1.0)
}

/// Exact binomial sign test of `correct` against `wrong` under a 50% null.
/// No decisions gives p = 1.
pub fn sign_test_with(correct: u64, wrong: u64, sidedness: Sidedness) -> (f64, bool) {
    let n = correct + wrong;
    if n == 0 {
        return (1.0, false);
    }
    let p = match sidedness {
        Sidedness::OneSided => upper_tail(n, correct),
        Sidedness::TwoSided => {
            let upper = upper_tail(n, correct);
            let lower = upper_tail(n, n - correct);
            (2.0 * upper.min(lower)).min(1.0)
        }
    };
    (p, p < SIGNIFICANCE_LEVEL)
}

/// One-sided sign test.
pub fn sign_test(correct: u64, wrong: u64) -> (f64, bool) {
    sign_test_with(correct, wrong, Sidedness::OneSided)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatementScore {
    pub correct: u64,
    pub wrong: u64,
    pub dont_know: u64,
    pub time_exceeded: u64,
    pub decision_rate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correctness: Option<f64>,
    pub p_value: f64,
    pub significant_at_05: bool,
}

impl StatementScore {
    pub fn slots(&self) -> u64 {
        self.correct + self.wrong + self.dont_know + self.time_exceeded
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    /// Decisions over answer slots; 0 when there are no slots.
    pub decision_rate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correctness: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_decision_seconds: Option<f64>,
    pub n_subjects: usize,
    pub n_statements: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub per_statement: IndexMap<String, StatementScore>,
    pub aggregate: Aggregate,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("response of {subject} names statement {statement:?}, which is in no answer key")]
    UnknownStatement { subject: String, statement: String },
    #[error("{subject} answered statement {statement:?} more than once")]
    DuplicateResponse { subject: String, statement: String },
    #[error("statement {statement:?} belongs to ontograph {expected:?}, response says {found:?}")]
    OntographMismatch {
        statement: String,
        expected: String,
        found: String,
    },
    #[error("response of {subject} to {statement:?}: elapsed_ms must be present exactly when the time limit was not exceeded")]
    ElapsedMismatch { subject: String, statement: String },
    #[error("statement {0:?} appears in more than one answer key")]
    AmbiguousKey(String),
}

/// Scores with the one-sided sign test.
pub fn score(
    responses: &[ResponseRecord],
    keys: &[AnswerKey],
    exclude: &BTreeSet<String>,
) -> Result<ScoreReport, ScoreError> {
    score_with(responses, keys, exclude, Sidedness::OneSided)
}

/// Excluded statements count toward neither per-statement rows nor
/// aggregates.
pub fn score_with(
    responses: &[ResponseRecord],
    keys: &[AnswerKey],
    exclude: &BTreeSet<String>,
    sidedness: Sidedness,
) -> Result<ScoreReport, ScoreError> {
    let mut truth: HashMap<&str, (&str, bool)> = HashMap::new();
    let mut order: Vec<&str> = Vec::new();
    for key in keys {
        for e in &key.entries {
            if truth.insert(&e.id, (&key.ontograph, e.truth)).is_some() {
                return Err(ScoreError::AmbiguousKey(e.id.clone()));
            }
            order.push(&e.id);
        }
    }

    // counts: correct, wrong, dont_know, time_exceeded
    let mut counts: HashMap<&str, [u64; 4]> = HashMap::new();
    let mut seen: HashSet<(&str, &str)> = HashSet::new();
    let mut subjects: HashSet<&str> = HashSet::new();
    let mut decision_ms: u64 = 0;
    for r in responses {
        if (r.answer == Answer::TimeExceeded) == r.elapsed_ms.is_some() {
            return Err(ScoreError::ElapsedMismatch {
                subject: r.subject.clone(),
                statement: r.statement.clone(),
            });
        }
        if !seen.insert((&r.subject, &r.statement)) {
            return Err(ScoreError::DuplicateResponse {
                subject: r.subject.clone(),
                statement: r.statement.clone(),
            });
        }
        subjects.insert(&r.subject);
        if exclude.contains(&r.statement) {
            continue;
        }
        let Some(&(ontograph, expected)) = truth.get(r.statement.as_str()) else {
            return Err(ScoreError::UnknownStatement {
                subject: r.subject.clone(),
                statement: r.statement.clone(),
            });
        };
        if ontograph != r.ontograph {
            return Err(ScoreError::OntographMismatch {
                statement: r.statement.clone(),
                expected: ontograph.to_owned(),
                found: r.ontograph.clone(),
            });
        }
        let slot = match r.answer.decision() {
            Some(d) if d == expected => 0,
            Some(_) => 1,
            None if r.answer == Answer::DontKnow => 2,
            None => 3,
        };
        if slot < 2 {
            decision_ms += r.elapsed_ms.unwrap_or(0);
        }
        counts.entry(&r.statement).or_default()[slot] += 1;
    }

    let mut per_statement = IndexMap::new();
    let (mut total_correct, mut total_wrong, mut total_slots) = (0u64, 0u64, 0u64);
    for id in order.into_iter().filter(|id| !exclude.contains(*id)) {
        let [correct, wrong, dont_know, time_exceeded] =
            counts.get(id).copied().unwrap_or_default();
        let slots = correct + wrong + dont_know + time_exceeded;
        let decisions = correct + wrong;
        let (p_value, significant_at_05) = sign_test_with(correct, wrong, sidedness);
        total_correct += correct;
        total_wrong += wrong;
        total_slots += slots;
        per_statement.insert(
            id.to_owned(),
            StatementScore {
                correct,
                wrong,
                dont_know,
                time_exceeded,
                decision_rate: ratio(decisions, slots).unwrap_or(0.0),
                correctness: ratio(correct, decisions),
                p_value,
                significant_at_05,
            },
        );
    }

    let decisions = total_correct + total_wrong;
    let aggregate = Aggregate {
        decision_rate: ratio(decisions, total_slots).unwrap_or(0.0),
        correctness: ratio(total_correct, decisions),
        mean_decision_seconds: (decisions > 0)
            .then(|| decision_ms as f64 / 1000.0 / decisions as f64),
        n_subjects: subjects.len(),
        n_statements: per_statement.len(),
    };
    Ok(ScoreReport {
        per_statement,
        aggregate,
    })
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

impl ScoreReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// Tab-separated table: one row per statement, then one `name<TAB>value`
    /// line per aggregate figure.
    pub fn to_table(&self) -> String {
        let mut out = String::from("id\tC\tW\tDK\tTE\tp\tsig\n");
        for (id, s) in &self.per_statement {
            let _ = writeln!(
                out,
                "{id}\t{}\t{}\t{}\t{}\t{:.6}\t{}",
                s.correct,
                s.wrong,
                s.dont_know,
                s.time_exceeded,
                s.p_value,
                if s.significant_at_05 { "yes" } else { "no" }
            );
        }
        let a = &self.aggregate;
        let opt = |v: Option<f64>| v.map_or("-".to_owned(), |v| format!("{v:.6}"));
        let _ = writeln!(out, "decision_rate\t{:.6}", a.decision_rate);
        let _ = writeln!(out, "correctness\t{}", opt(a.correctness));
        let _ = writeln!(
            out,
            "mean_decision_seconds\t{}",
            opt(a.mean_decision_seconds)
        );
        let _ = writeln!(out, "n_subjects\t{}", a.n_subjects);
        let _ = writeln!(out, "n_statements\t{}", a.n_statements);
        out
    }
}
