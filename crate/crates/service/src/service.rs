//! Session bookkeeping independent of the transport.
//!
//! Two append-only files live in each experiment directory:
//! `responses.ndjson` in the scoring log format, and `sessions.ndjson`
//! recording when sessions start, move to a new stage and finish. Opening
//! a service replays both, so a restart resumes every session where it
//! stood.

use std::collections::{BTreeMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, MutexGuard};

use ontograph_core::scoring::{read_log, score, Answer, ResponseRecord, ScoreReport};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clock::Clock;
use crate::experiment::{discover, Experiment, LoadError};

pub const RESPONSES_FILE: &str = "responses.ndjson";
pub const SESSIONS_FILE: &str = "sessions.ndjson";
pub const DEFAULT_GRACE_SECONDS: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServiceOptions {
    /// Replaces every experiment's own limit when set.
    pub time_limit_seconds: Option<u64>,
    pub grace_seconds: u64,
}

impl ServiceOptions {
    pub fn new() -> Self {
        ServiceOptions {
            time_limit_seconds: None,
            grace_seconds: DEFAULT_GRACE_SECONDS,
        }
    }
}

impl Default for ServiceOptions {
    fn default() -> Self {
        Self::new()
    }
}

/// What a subject may answer. Running out of time is recorded by the
/// server, never submitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubjectAnswer {
    True,
    False,
    DontKnow,
}

impl From<SubjectAnswer> for Answer {
    fn from(a: SubjectAnswer) -> Answer {
        match a {
            SubjectAnswer::True => Answer::True,
            SubjectAnswer::False => Answer::False,
            SubjectAnswer::DontKnow => Answer::DontKnow,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageStatement {
    pub id: String,
    pub text: String,
    pub answered: bool,
}

/// Everything a subject sees of one stage. Carries no truth values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageView {
    pub session: String,
    pub experiment: String,
    pub stage: usize,
    pub stage_count: usize,
    pub ontograph: String,
    pub svg: String,
    pub statements: Vec<StageStatement>,
    pub remaining_seconds: u64,
    /// The time limit has run out; no further answers count.
    pub locked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AdvanceOutcome {
    Stage { stage: usize },
    Finished { finished: bool },
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("no experiment {0:?}")]
    UnknownExperiment(String),
    #[error("no session {0:?}")]
    UnknownSession(String),
    #[error("statement {0:?} is not part of this experiment")]
    UnknownStatement(String),
    #[error("statement {0:?} is not shown in the current stage")]
    NotInCurrentStage(String),
    #[error("statement {0:?} was already answered")]
    DuplicateAnswer(String),
    #[error("the time limit for this stage has passed")]
    DeadlinePassed,
    #[error("the session is finished")]
    SessionFinished,
    #[error(
        "{0} statements are unanswered; set confirm_dont_know to record them as \"don't know\""
    )]
    ConfirmationRequired(usize),
    #[error("subject {0:?} already has a session in this experiment")]
    SubjectExists(String),
    #[error("subject id must not be empty")]
    EmptySubject,
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path} line {line}: {message}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("scoring failed: {0}")]
    Score(#[from] ontograph_core::scoring::ScoreError),
}

impl ServiceError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::UnknownExperiment(_) => "unknown_experiment",
            ServiceError::UnknownSession(_) => "unknown_session",
            ServiceError::UnknownStatement(_) => "unknown_statement",
            ServiceError::NotInCurrentStage(_) => "not_in_current_stage",
            ServiceError::DuplicateAnswer(_) => "duplicate_answer",
            ServiceError::DeadlinePassed => "deadline_passed",
            ServiceError::SessionFinished => "session_finished",
            ServiceError::ConfirmationRequired(_) => "confirmation_required",
            ServiceError::SubjectExists(_) => "subject_exists",
            ServiceError::EmptySubject => "bad_request",
            ServiceError::Io { .. }
            | ServiceError::Corrupt { .. }
            | ServiceError::Load(_)
            | ServiceError::Score(_) => "internal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
enum SessionEvent {
    Created {
        session: String,
        subject: String,
        at_ms: u64,
    },
    Advanced {
        session: String,
        stage: usize,
        at_ms: u64,
    },
    Finished {
        session: String,
        at_ms: u64,
    },
}

/// Replayable state of one session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionState {
    pub id: String,
    pub subject: String,
    pub stage: usize,
    pub stage_started_ms: u64,
    pub answers: BTreeMap<String, Answer>,
    pub finished: bool,
}

struct AppendLog {
    path: PathBuf,
    file: File,
}

impl AppendLog {
    fn open(path: PathBuf) -> Result<Self, ServiceError> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|source| ServiceError::Io {
                path: path.clone(),
                source,
            })?;
        Ok(AppendLog { path, file })
    }

    /// Writes one line and waits for it to reach the disk.
    fn append(&mut self, line: &str) -> Result<(), ServiceError> {
        let mut buf = Vec::with_capacity(line.len() + 1);
        buf.extend_from_slice(line.as_bytes());
        buf.push(b'\n');
        self.file
            .write_all(&buf)
            .and_then(|()| self.file.sync_data())
            .map_err(|source| ServiceError::Io {
                path: self.path.clone(),
                source,
            })
    }
}

struct ExperimentState {
    experiment: Experiment,
    limit_ms: u64,
    sessions: BTreeMap<String, SessionState>,
    subjects: HashSet<String>,
    responses: AppendLog,
    journal: AppendLog,
}

pub struct ExperimentService {
    clock: Arc<dyn Clock>,
    grace_ms: u64,
    state: Mutex<BTreeMap<String, ExperimentState>>,
}

fn read_lines(path: &Path) -> Result<String, ServiceError> {
    match fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(String::new()),
        Err(source) => Err(ServiceError::Io {
            path: path.to_owned(),
            source,
        }),
    }
}

impl ExperimentService {
    /// Loads every experiment under `root` and replays its logs.
    pub fn open(
        root: &Path,
        clock: Arc<dyn Clock>,
        options: ServiceOptions,
    ) -> Result<Self, ServiceError> {
        let mut state = BTreeMap::new();
        for experiment in discover(root)? {
            let limit_s = options
                .time_limit_seconds
                .unwrap_or(experiment.time_limit_seconds);
            let st = replay(experiment, limit_s * 1000)?;
            state.insert(st.experiment.id.clone(), st);
        }
        Ok(ExperimentService {
            clock,
            grace_ms: options.grace_seconds * 1000,
            state: Mutex::new(state),
        })
    }

    fn lock(&self) -> MutexGuard<'_, BTreeMap<String, ExperimentState>> {
        // a panic mid-update cannot leave the files inconsistent with
        // memory in a way replay would not repair, so poisoning is ignored
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn experiment_ids(&self) -> Vec<String> {
        self.lock().keys().cloned().collect()
    }

    pub fn create_session(&self, experiment: &str, subject: &str) -> Result<String, ServiceError> {
        if subject.trim().is_empty() {
            return Err(ServiceError::EmptySubject);
        }
        let mut state = self.lock();
        let st = state
            .get_mut(experiment)
            .ok_or_else(|| ServiceError::UnknownExperiment(experiment.to_owned()))?;
        if st.subjects.contains(subject) {
            return Err(ServiceError::SubjectExists(subject.to_owned()));
        }
        let id = uuid::Uuid::new_v4().simple().to_string();
        let at_ms = self.clock.now_ms();
        let event = SessionEvent::Created {
            session: id.clone(),
            subject: subject.to_owned(),
            at_ms,
        };
        st.journal
            .append(&serde_json::to_string(&event).expect("event serializes"))?;
        st.subjects.insert(subject.to_owned());
        st.sessions.insert(
            id.clone(),
            SessionState {
                id: id.clone(),
                subject: subject.to_owned(),
                stage: 0,
                stage_started_ms: at_ms,
                answers: BTreeMap::new(),
                finished: false,
            },
        );
        Ok(id)
    }

    pub fn get_stage(&self, session: &str) -> Result<StageView, ServiceError> {
        let now = self.clock.now_ms();
        let mut state = self.lock();
        let st = find(&mut state, session)?;
        st.close_if_expired(session, now, self.grace_ms)?;
        let s = &st.sessions[session];
        if s.finished {
            return Err(ServiceError::SessionFinished);
        }
        let stage = &st.experiment.stages[s.stage];
        let deadline = s.stage_started_ms + st.limit_ms;
        Ok(StageView {
            session: s.id.clone(),
            experiment: st.experiment.id.clone(),
            stage: s.stage,
            stage_count: st.experiment.stages.len(),
            ontograph: stage.world.id.clone(),
            svg: stage.svg.clone(),
            statements: stage
                .statements
                .iter()
                .map(|e| StageStatement {
                    id: e.id.clone(),
                    text: e.text.clone(),
                    answered: s.answers.contains_key(&e.id),
                })
                .collect(),
            remaining_seconds: deadline.saturating_sub(now).div_ceil(1000),
            locked: now >= deadline,
        })
    }

    /// Records an answer when it arrives within the limit plus grace. A
    /// late answer closes the stage, logging every open statement as
    /// time_exceeded, and is rejected.
    pub fn submit_answer(
        &self,
        session: &str,
        statement: &str,
        answer: SubjectAnswer,
    ) -> Result<(), ServiceError> {
        let now = self.clock.now_ms();
        let mut state = self.lock();
        let st = find(&mut state, session)?;
        let current = {
            let s = &st.sessions[session];
            if s.finished {
                return Err(ServiceError::SessionFinished);
            }
            s.stage
        };
        match st.experiment.stage_of(statement) {
            None => return Err(ServiceError::UnknownStatement(statement.to_owned())),
            Some(i) if i != current => {
                return Err(ServiceError::NotInCurrentStage(statement.to_owned()))
            }
            Some(_) => {}
        }
        if st.close_if_expired(session, now, self.grace_ms)? {
            return Err(ServiceError::DeadlinePassed);
        }
        let s = &st.sessions[session];
        if s.answers.contains_key(statement) {
            return Err(ServiceError::DuplicateAnswer(statement.to_owned()));
        }
        let elapsed = now - s.stage_started_ms;
        st.record(session, statement, answer.into(), Some(elapsed))
    }

    /// Closes the current stage and starts the next. Past the time limit,
    /// open statements become time_exceeded; before it, they become
    /// "don't know" only with `confirm_dont_know`.
    pub fn advance(
        &self,
        session: &str,
        confirm_dont_know: bool,
    ) -> Result<AdvanceOutcome, ServiceError> {
        let now = self.clock.now_ms();
        let mut state = self.lock();
        let st = find(&mut state, session)?;
        if st.sessions[session].finished {
            return Err(ServiceError::SessionFinished);
        }
        // grace only covers answers already on their way
        st.close_if_expired(session, now, 0)?;
        let open = st.open_statements(session);
        if !open.is_empty() {
            if !confirm_dont_know {
                return Err(ServiceError::ConfirmationRequired(open.len()));
            }
            let elapsed = now - st.sessions[session].stage_started_ms;
            for id in open {
                st.record(session, &id, Answer::DontKnow, Some(elapsed))?;
            }
        }
        let next = st.sessions[session].stage + 1;
        let (event, outcome) = if next == st.experiment.stages.len() {
            (
                SessionEvent::Finished {
                    session: session.to_owned(),
                    at_ms: now,
                },
                AdvanceOutcome::Finished { finished: true },
            )
        } else {
            (
                SessionEvent::Advanced {
                    session: session.to_owned(),
                    stage: next,
                    at_ms: now,
                },
                AdvanceOutcome::Stage { stage: next },
            )
        };
        st.journal
            .append(&serde_json::to_string(&event).expect("event serializes"))?;
        apply(
            st.sessions.get_mut(session).expect("session exists"),
            &event,
        );
        Ok(outcome)
    }

    /// Scores the persisted response log after closing every stage whose
    /// time has run out.
    pub fn results(&self, experiment: &str) -> Result<ScoreReport, ServiceError> {
        let now = self.clock.now_ms();
        let mut state = self.lock();
        let st = state
            .get_mut(experiment)
            .ok_or_else(|| ServiceError::UnknownExperiment(experiment.to_owned()))?;
        let ids: Vec<String> = st.sessions.keys().cloned().collect();
        for id in ids {
            st.close_if_expired(&id, now, self.grace_ms)?;
        }
        let records = load_responses(&st.responses.path)?;
        Ok(score(
            &records,
            &st.experiment.keys(),
            &st.experiment.exclude,
        )?)
    }

    /// Current state of a session, for inspection and tests.
    pub fn session_state(&self, session: &str) -> Option<SessionState> {
        self.lock()
            .values()
            .find_map(|st| st.sessions.get(session).cloned())
    }

    /// All sessions of an experiment in id order.
    pub fn sessions(&self, experiment: &str) -> Vec<SessionState> {
        self.lock()
            .get(experiment)
            .map(|st| st.sessions.values().cloned().collect())
            .unwrap_or_default()
    }
}

fn find<'a>(
    state: &'a mut BTreeMap<String, ExperimentState>,
    session: &str,
) -> Result<&'a mut ExperimentState, ServiceError> {
    state
        .values_mut()
        .find(|st| st.sessions.contains_key(session))
        .ok_or_else(|| ServiceError::UnknownSession(session.to_owned()))
}

impl ExperimentState {
    fn open_statements(&self, session: &str) -> Vec<String> {
        let s = &self.sessions[session];
        self.experiment.stages[s.stage]
            .statements
            .iter()
            .filter(|e| !s.answers.contains_key(&e.id))
            .map(|e| e.id.clone())
            .collect()
    }

    fn record(
        &mut self,
        session: &str,
        statement: &str,
        answer: Answer,
        elapsed_ms: Option<u64>,
    ) -> Result<(), ServiceError> {
        let s = &self.sessions[session];
        let stage = &self.experiment.stages[s.stage];
        let rec = ResponseRecord {
            session: session.to_owned(),
            subject: s.subject.clone(),
            ontograph: stage.world.id.clone(),
            statement: statement.to_owned(),
            answer,
            elapsed_ms,
        };
        self.responses.append(&rec.to_line())?;
        self.sessions
            .get_mut(session)
            .expect("session exists")
            .answers
            .insert(statement.to_owned(), answer);
        Ok(())
    }

    /// Logs open statements as time_exceeded once limit plus grace has
    /// passed. Returns whether the deadline has passed.
    fn close_if_expired(
        &mut self,
        session: &str,
        now: u64,
        grace_ms: u64,
    ) -> Result<bool, ServiceError> {
        let s = &self.sessions[session];
        if s.finished || now <= s.stage_started_ms + self.limit_ms + grace_ms {
            return Ok(false);
        }
        for id in self.open_statements(session) {
            self.record(session, &id, Answer::TimeExceeded, None)?;
        }
        Ok(true)
    }
}

fn apply(s: &mut SessionState, event: &SessionEvent) {
    match event {
        SessionEvent::Created { .. } => {}
        SessionEvent::Advanced { stage, at_ms, .. } => {
            s.stage = *stage;
            s.stage_started_ms = *at_ms;
        }
        SessionEvent::Finished { .. } => s.finished = true,
    }
}

fn load_responses(path: &Path) -> Result<Vec<ResponseRecord>, ServiceError> {
    read_log(&read_lines(path)?).map_err(|e| ServiceError::Corrupt {
        path: path.to_owned(),
        line: e.line,
        message: e.source.to_string(),
    })
}

fn replay(experiment: Experiment, limit_ms: u64) -> Result<ExperimentState, ServiceError> {
    let journal_path = experiment.dir.join(SESSIONS_FILE);
    let responses_path = experiment.dir.join(RESPONSES_FILE);
    let mut sessions: BTreeMap<String, SessionState> = BTreeMap::new();
    let mut subjects = HashSet::new();
    for (i, line) in read_lines(&journal_path)?.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let corrupt = |message: String| ServiceError::Corrupt {
            path: journal_path.clone(),
            line: i + 1,
            message,
        };
        let event: SessionEvent = serde_json::from_str(line).map_err(|e| corrupt(e.to_string()))?;
        match &event {
            SessionEvent::Created {
                session,
                subject,
                at_ms,
            } => {
                subjects.insert(subject.clone());
                sessions.insert(
                    session.clone(),
                    SessionState {
                        id: session.clone(),
                        subject: subject.clone(),
                        stage: 0,
                        stage_started_ms: *at_ms,
                        answers: BTreeMap::new(),
                        finished: false,
                    },
                );
            }
            SessionEvent::Advanced { session, .. } | SessionEvent::Finished { session, .. } => {
                let s = sessions
                    .get_mut(session)
                    .ok_or_else(|| corrupt(format!("event for unknown session {session:?}")))?;
                apply(s, &event);
            }
        }
    }
    // records of sessions absent from the journal, e.g. imported logs,
    // count for scoring only
    for rec in load_responses(&responses_path)? {
        subjects.insert(rec.subject.clone());
        if let Some(s) = sessions.get_mut(&rec.session) {
            s.answers.insert(rec.statement, rec.answer);
        }
    }
    Ok(ExperimentState {
        limit_ms,
        sessions,
        subjects,
        responses: AppendLog::open(responses_path)?,
        journal: AppendLog::open(journal_path)?,
        experiment,
    })
}
