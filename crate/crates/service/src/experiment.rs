//! Experiment definitions on disk.
//!
//! An experiment directory holds `experiment.json`, which names the
//! lexicon file and, per stage, an ontograph file and a statement file,
//! all relative to the directory.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use ontograph_core::corpus::{fixture_lexicon, fixtures};
use ontograph_core::parser::{statements_from_json, statements_to_json, StatementEntry};
use ontograph_core::render::{render, RenderConfig};
use ontograph_core::semantics::{generate_answer_key, AnswerKey};
use ontograph_core::{Lexicon, Ontograph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_TIME_LIMIT_SECONDS: u64 = 300;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageFiles {
    pub ontograph: String,
    pub statements: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    pub id: String,
    pub lexicon: String,
    pub stages: Vec<StageFiles>,
    #[serde(default = "default_limit")]
    pub time_limit_seconds: u64,
    #[serde(default)]
    pub exclude: BTreeSet<String>,
}

fn default_limit() -> u64 {
    DEFAULT_TIME_LIMIT_SECONDS
}

impl ExperimentFile {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("experiment serializes");
        out.push('\n');
        out
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("experiment {experiment}: {message}")]
    Invalid { experiment: String, message: String },
}

/// One ontograph with its statements, key and drawing.
#[derive(Debug, Clone)]
pub struct Stage {
    pub world: Ontograph,
    pub statements: Vec<StatementEntry>,
    pub key: AnswerKey,
    pub svg: String,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub id: String,
    pub dir: PathBuf,
    pub lexicon: Lexicon,
    pub stages: Vec<Stage>,
    pub time_limit_seconds: u64,
    pub exclude: BTreeSet<String>,
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })
}

fn format_err(path: &Path, e: impl std::fmt::Display) -> LoadError {
    LoadError::Format {
        path: path.to_owned(),
        message: e.to_string(),
    }
}

impl Experiment {
    /// Loads `dir/experiment.json` and everything it names. Keys are
    /// derived here, so a statement that fails to parse or evaluate stops
    /// the load.
    pub fn load(dir: &Path) -> Result<Experiment, LoadError> {
        let def_path = dir.join("experiment.json");
        let def: ExperimentFile =
            serde_json::from_str(&read(&def_path)?).map_err(|e| format_err(&def_path, e))?;
        let invalid = |message: String| LoadError::Invalid {
            experiment: def.id.clone(),
            message,
        };
        if def.time_limit_seconds == 0 {
            return Err(invalid("time_limit_seconds must be positive".into()));
        }
        if def.stages.is_empty() {
            return Err(invalid("no stages".into()));
        }
        let lex_path = dir.join(&def.lexicon);
        let lexicon =
            Lexicon::from_json(&read(&lex_path)?).map_err(|e| format_err(&lex_path, e))?;

        let mut stages = Vec::new();
        let mut ids = BTreeSet::new();
        for files in &def.stages {
            let world_path = dir.join(&files.ontograph);
            let world = Ontograph::from_json(&read(&world_path)?)
                .map_err(|e| format_err(&world_path, e))?;
            let violations = world.validate();
            if let Some(v) = violations.first() {
                return Err(format_err(&world_path, v));
            }
            if let Some(gap) = lexicon.check_legend(&world.legend).first() {
                return Err(format_err(&world_path, gap));
            }
            let st_path = dir.join(&files.statements);
            let statements =
                statements_from_json(&read(&st_path)?).map_err(|e| format_err(&st_path, e))?;
            for s in &statements {
                if !ids.insert(s.id.clone()) {
                    return Err(invalid(format!(
                        "statement id {:?} appears in two stages",
                        s.id
                    )));
                }
            }
            let key = generate_answer_key(&world, &statements, &lexicon)
                .map_err(|e| format_err(&st_path, e))?;
            let svg =
                render(&world, &RenderConfig::default()).map_err(|e| format_err(&world_path, e))?;
            stages.push(Stage {
                world,
                statements,
                key,
                svg,
            });
        }
        Ok(Experiment {
            id: def.id,
            dir: dir.to_owned(),
            lexicon,
            stages,
            time_limit_seconds: def.time_limit_seconds,
            exclude: def.exclude,
        })
    }

    pub fn keys(&self) -> Vec<AnswerKey> {
        self.stages.iter().map(|s| s.key.clone()).collect()
    }

    /// Stage index holding a statement.
    pub fn stage_of(&self, statement: &str) -> Option<usize> {
        self.stages
            .iter()
            .position(|s| s.statements.iter().any(|st| st.id == statement))
    }
}

/// Every experiment under `root`: the root itself when it holds an
/// `experiment.json`, and each immediate subdirectory that does.
pub fn discover(root: &Path) -> Result<Vec<Experiment>, LoadError> {
    let mut dirs = Vec::new();
    if root.join("experiment.json").is_file() {
        dirs.push(root.to_owned());
    }
    let entries = fs::read_dir(root).map_err(|source| LoadError::Io {
        path: root.to_owned(),
        source,
    })?;
    let mut subdirs: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join("experiment.json").is_file())
        .collect();
    subdirs.sort();
    dirs.extend(subdirs);
    dirs.iter().map(|d| Experiment::load(d)).collect()
}

pub const FIXTURE_EXPERIMENT_ID: &str = "fixtures";

/// Writes the four fixture series as a ready-to-serve experiment: for each
/// world `<id>.ontograph.json`, `<id>.statements.json`, `<id>.key.json`
/// and `<id>.svg`, plus `lexicon.json` and `experiment.json`. Returns the
/// written file names.
pub fn write_fixture_experiment(dir: &Path) -> std::io::Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut put = |name: String, text: String| -> std::io::Result<()> {
        fs::write(dir.join(&name), text)?;
        written.push(name);
        Ok(())
    };
    put("lexicon.json".into(), fixture_lexicon().to_json())?;
    let mut stages = Vec::new();
    for series in fixtures() {
        let id = &series.world.id;
        let svg = render(&series.world, &RenderConfig::default()).expect("fixture worlds render");
        put(
            format!("{id}.ontograph.json"),
            series.world.to_canonical_json(),
        )?;
        put(
            format!("{id}.statements.json"),
            statements_to_json(&series.statements),
        )?;
        put(format!("{id}.key.json"), series.key.to_json())?;
        put(format!("{id}.svg"), svg)?;
        stages.push(StageFiles {
            ontograph: format!("{id}.ontograph.json"),
            statements: format!("{id}.statements.json"),
        });
    }
    let def = ExperimentFile {
        id: FIXTURE_EXPERIMENT_ID.into(),
        lexicon: "lexicon.json".into(),
        stages,
        time_limit_seconds: DEFAULT_TIME_LIMIT_SECONDS,
        exclude: BTreeSet::new(),
    };
    put("experiment.json".into(), def.to_json())?;
    Ok(written)
}
