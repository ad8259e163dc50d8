//! A made-up response log of 15 subjects over the 40 fixture statements.

use super::fixtures::HAND_TRUTHS;
use crate::scoring::{Answer, ResponseRecord};

pub const SYNTHETIC_SUBJECTS: usize = 15;

/// Per statement: correct, wrong, dont_know, time_exceeded. Each row sums
/// to the number of subjects.
pub const SYNTHETIC_COUNTS: [(&str, [u64; 4]); 40] = [
    ("1/1", [12, 2, 1, 0]),
    ("1/2", [14, 0, 0, 1]),
    ("1/3", [5, 9, 1, 0]),
    ("1/4", [10, 2, 2, 1]),
    ("1/5", [13, 1, 1, 0]),
    ("1/6", [14, 1, 0, 0]),
    ("1/7", [13, 2, 0, 0]),
    ("1/8", [12, 1, 1, 1]),
    ("1/9", [14, 1, 0, 0]),
    ("1/10", [4, 10, 1, 0]),
    ("2/1", [15, 0, 0, 0]),
    ("2/2", [13, 1, 1, 0]),
    ("2/3", [14, 1, 0, 0]),
    ("2/4", [12, 2, 1, 0]),
    ("2/5", [14, 0, 1, 0]),
    ("2/6", [13, 2, 0, 0]),
    ("2/7", [3, 11, 1, 0]),
    ("2/8", [13, 1, 0, 1]),
    ("2/9", [4, 10, 0, 1]),
    ("2/10", [12, 2, 1, 0]),
    ("3/1", [11, 2, 2, 0]),
    ("3/2", [12, 1, 1, 1]),
    ("3/3", [13, 1, 1, 0]),
    ("3/4", [11, 3, 1, 0]),
    ("3/5", [13, 1, 0, 1]),
    ("3/6", [6, 7, 2, 0]),
    ("3/7", [14, 0, 1, 0]),
    ("3/8", [12, 2, 0, 1]),
    ("3/9", [10, 3, 1, 1]),
    ("3/10", [11, 2, 1, 1]),
    ("4/1", [12, 2, 1, 0]),
    ("4/2", [11, 3, 0, 1]),
    ("4/3", [13, 1, 1, 0]),
    ("4/4", [12, 1, 1, 1]),
    ("4/5", [13, 2, 0, 0]),
    ("4/6", [11, 2, 1, 1]),
    ("4/7", [8, 4, 2, 1]),
    ("4/8", [12, 2, 0, 1]),
    ("4/9", [11, 2, 1, 1]),
    ("4/10", [1, 1, 10, 3]),
];

const CORRECT_MS: u64 = 20_000;
const WRONG_MS: u64 = 30_000;
const DONT_KNOW_MS: u64 = 45_000;

/// Records ordered by subject, then statement. Within each statement the
/// lowest-numbered subjects answer correctly, the next ones wrongly, then
/// say "don't know", and the rest run out of time.
pub fn synthetic_log() -> Vec<ResponseRecord> {
    let mut out = Vec::with_capacity(SYNTHETIC_SUBJECTS * SYNTHETIC_COUNTS.len());
    for subject in 0..SYNTHETIC_SUBJECTS as u64 {
        for ((id, [c, w, dk, _]), (hand_id, truth)) in SYNTHETIC_COUNTS.iter().zip(HAND_TRUTHS) {
            debug_assert_eq!(*id, hand_id);
            let (answer, elapsed_ms) = if subject < *c {
                (
                    if truth { Answer::True } else { Answer::False },
                    Some(CORRECT_MS),
                )
            } else if subject < c + w {
                (
                    if truth { Answer::False } else { Answer::True },
                    Some(WRONG_MS),
                )
            } else if subject < c + w + dk {
                (Answer::DontKnow, Some(DONT_KNOW_MS))
            } else {
                (Answer::TimeExceeded, None)
            };
            out.push(ResponseRecord {
                session: format!("synthetic_s{:02}", subject + 1),
                subject: format!("subject_{:02}", subject + 1),
                ontograph: ontograph_of(id).into(),
                statement: (*id).into(),
                answer,
                elapsed_ms,
            });
        }
    }
    out
}

/// Fixture world holding a statement, by the statement id's series prefix.
pub fn ontograph_of(statement: &str) -> &'static str {
    match statement.split('/').next() {
        Some("1") => "t_one",
        Some("2") => "t_two",
        Some("3") => "t_three",
        _ => "t_four",
    }
}
