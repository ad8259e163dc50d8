use std::collections::BTreeSet;

use ontograph_core::corpus::{fixtures, synthetic_log, SPECIAL_CASES, SYNTHETIC_COUNTS};
use ontograph_core::scoring::{read_log, score, sign_test, write_log, ScoreReport};
use ontograph_core::semantics::AnswerKey;
use proptest::prelude::*;

fn keys() -> Vec<AnswerKey> {
    fixtures().into_iter().map(|s| s.key).collect()
}

fn special() -> BTreeSet<String> {
    SPECIAL_CASES.iter().map(|s| (*s).to_owned()).collect()
}

fn full() -> ScoreReport {
    score(&synthetic_log(), &keys(), &BTreeSet::new()).unwrap()
}

#[test]
fn designated_statement() {
    let report = full();
    let row = &report.per_statement["1/1"];
    assert_eq!(row.decision_rate, 14.0 / 15.0);
    assert_eq!(row.correctness, Some(12.0 / 14.0));
}

#[test]
fn rows_reproduce_the_count_table() {
    let report = full();
    assert_eq!(report.per_statement.len(), 40);
    for (id, [c, w, dk, te]) in SYNTHETIC_COUNTS {
        let row = &report.per_statement[id];
        assert_eq!(
            [row.correct, row.wrong, row.dont_know, row.time_exceeded],
            [c, w, dk, te],
            "{id}"
        );
        assert_eq!(row.slots(), 15);
    }
}

// Totals worked out separately with exact fractions:
// all statements: C = 441, W = 101, 600 slots
// without 1/3, 1/10, 2/7, 2/9: C = 425, W = 61, 540 slots
// decisions take 20 s when correct and 30 s when wrong

#[test]
fn aggregates() {
    let a = full().aggregate;
    assert_eq!(a.decision_rate, 542.0 / 600.0);
    assert_eq!(a.correctness, Some(441.0 / 542.0));
    assert_eq!(a.mean_decision_seconds, Some(11_850.0 / 542.0));
    assert_eq!((a.n_subjects, a.n_statements), (15, 40));
}

#[test]
fn exclusion() {
    let all = full();
    let trimmed = score(&synthetic_log(), &keys(), &special()).unwrap();
    let a = &trimmed.aggregate;
    assert_eq!(a.decision_rate, 486.0 / 540.0);
    assert_eq!(a.correctness, Some(425.0 / 486.0));
    assert_eq!(a.mean_decision_seconds, Some(10_330.0 / 486.0));
    assert_eq!(a.n_statements, 36);
    for id in SPECIAL_CASES {
        assert!(!trimmed.per_statement.contains_key(id));
    }
    for (id, row) in &trimmed.per_statement {
        assert_eq!(row, &all.per_statement[id], "{id}");
        assert_eq!(
            row.p_value.to_bits(),
            all.per_statement[id].p_value.to_bits()
        );
    }
}

#[test]
fn significance_flags() {
    let report = full();
    let not_significant: Vec<&str> = report
        .per_statement
        .iter()
        .filter(|(_, r)| !r.significant_at_05)
        .map(|(id, _)| id.as_str())
        .collect();
    assert_eq!(
        not_significant,
        ["1/3", "1/10", "2/7", "2/9", "3/6", "4/7", "4/10"]
    );
    assert_eq!(report.per_statement["1/2"].p_value, 2f64.powi(-14));
    assert_eq!(report.per_statement["4/10"].p_value, 0.75);
    assert!((report.per_statement["1/4"].p_value - 79.0 / 4096.0).abs() < 1e-15);
}

#[test]
fn log_text_round_trip() {
    let log = synthetic_log();
    assert_eq!(read_log(&write_log(&log)).unwrap(), log);
}

#[test]
fn table_layout() {
    let table = full().to_table();
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("id\tC\tW\tDK\tTE\tp\tsig"));
    assert_eq!(lines.next(), Some("1/1\t12\t2\t1\t0\t0.006470\tyes"));
    assert!(table.contains("\ndecision_rate\t0.903333\n"));
    assert!(table.contains("\ncorrectness\t0.813653\n"));
}

proptest! {
    #[test]
    fn order_does_not_matter(seed in any::<u64>()) {
        let mut log = synthetic_log();
        let mut rng = ontograph_core::corpus::XorShift64Star::new(seed);
        for i in (1..log.len()).rev() {
            log.swap(i, rng.below(i + 1));
        }
        prop_assert_eq!(score(&log, &keys(), &BTreeSet::new()).unwrap(), full());
    }

    #[test]
    fn excluding_more_keeps_other_rows(mask in any::<u64>()) {
        let all = full();
        let exclude: BTreeSet<String> = all
            .per_statement
            .keys()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, id)| id.clone())
            .collect();
        let some = score(&synthetic_log(), &keys(), &exclude).unwrap();
        for (id, row) in &some.per_statement {
            prop_assert_eq!(row, &all.per_statement[id]);
        }
    }

    #[test]
    fn sign_test_depends_on_c_and_n_only(c in 0u64..60, w in 0u64..60) {
        let (p, sig) = sign_test(c, w);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert_eq!(sig, p < 0.05);
        if w > 0 {
            // one more correct at the same n never raises p
            prop_assert!(sign_test(c + 1, w - 1).0 <= p);
        }
    }
}
