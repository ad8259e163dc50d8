//! Timed experiment sessions: subjects see one ontograph at a time with its
//! statements, answer against a server-side deadline, and every answer is
//! appended to a response log that scoring replays.

pub mod clock;
pub mod experiment;
pub mod http;
pub mod service;

pub use clock::{Clock, ManualClock, SystemClock};
pub use experiment::{
    write_fixture_experiment, Experiment, ExperimentFile, StageFiles, FIXTURE_EXPERIMENT_ID,
};
pub use http::{router, serve};
pub use service::{
    AdvanceOutcome, ExperimentService, ServiceError, ServiceOptions, StageView, SubjectAnswer,
};
