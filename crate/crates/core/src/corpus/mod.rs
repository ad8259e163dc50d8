//! Fixture series, seeded random worlds and statements, and a synthetic
//! response log.

mod fixtures;
mod random;
mod rng;
mod synthetic;

pub use fixtures::{
    fixture_lexicon, fixtures, restrictions, Family, FixtureSeries, Restriction, HAND_TRUTHS,
    SPECIAL_CASES,
};
pub use random::{
    differential, gen_random_statement, gen_random_world, lexicon_for, DifferentialReport,
};
pub use rng::XorShift64Star;
pub use synthetic::{synthetic_log, SYNTHETIC_COUNTS, SYNTHETIC_SUBJECTS};
