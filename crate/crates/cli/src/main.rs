use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use ontograph_core::parser::{statements_from_json, StatementEntry};
use ontograph_core::render::{render, RenderConfig};
use ontograph_core::scoring::{read_log, score_with, Sidedness};
use ontograph_core::semantics::{generate_answer_key, to_formula, AnswerKey};
use ontograph_core::{parse_sentence, Lexicon, Ontograph};
use ontograph_service::{
    router, serve, write_fixture_experiment, ExperimentService, ServiceOptions, SystemClock,
};

#[derive(Parser)]
#[command(
    name = "ontograph",
    version,
    about = "Ontograph mini worlds, controlled English statements and experiment scoring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an ontograph file; prints one `code<TAB>element<TAB>message` line per problem
    Validate { ontograph: PathBuf },
    /// Parse one sentence and print its tree (JSON) or its logical form
    Parse {
        sentence: String,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long, conflicts_with = "fol")]
        ast: bool,
        #[arg(long)]
        fol: bool,
    },
    /// Decide each statement against the ontograph; prints `id<TAB>true|false`
    Eval {
        ontograph: PathBuf,
        statements: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
    },
    /// Write the answer key for a statement file
    Keygen {
        ontograph: PathBuf,
        statements: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        /// Output file; standard output when absent
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw an ontograph as SVG
    Render {
        ontograph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 120)]
        cell_size: u32,
    },
    /// Write the fixture series as files, ready to serve as an experiment
    Fixtures {
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Score a response log against one or more answer keys
    Score {
        #[arg(long = "key", required = true, num_args = 1..)]
        keys: Vec<PathBuf>,
        #[arg(long)]
        responses: PathBuf,
        /// Statement ids to leave out, comma separated
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<String>,
        #[arg(long)]
        two_sided: bool,
        /// Print the report as JSON instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Run the experiment service
    Serve {
        #[arg(long)]
        experiment_dir: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Seconds per ontograph, overriding the experiment files
        #[arg(long)]
        time_limit: Option<u64>,
        #[arg(long, default_value_t = ontograph_service::service::DEFAULT_GRACE_SECONDS)]
        grace_seconds: u64,
        /// Token for the results route; a random one is printed when absent
        #[arg(long)]
        results_token: Option<String>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_world(path: &Path) -> Result<Ontograph> {
    Ontograph::from_json(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_lexicon(path: &Path) -> Result<Lexicon> {
    Lexicon::from_json(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_statements(path: &Path) -> Result<Vec<StatementEntry>> {
    statements_from_json(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn valid_world(path: &Path) -> Result<Ontograph> {
    let world = load_world(path)?;
    if let Some(v) = world.validate().first() {
        bail!("{}: {v}", path.display());
    }
    Ok(world)
}

fn key_for(ontograph: &Path, statements: &Path, lexicon: &Path) -> Result<AnswerKey> {
    let world = valid_world(ontograph)?;
    let lexicon = load_lexicon(lexicon)?;
    let statements = load_statements(statements)?;
    Ok(generate_answer_key(&world, &statements, &lexicon)?)
}

fn run(command: Command, out: &mut impl Write) -> Result<()> {
    match command {
        Command::Validate { ontograph } => {
            let violations = load_world(&ontograph)?.validate();
            for v in &violations {
                writeln!(out, "{}\t{}\t{}", v.code.as_str(), v.element, v.message)?;
            }
            if !violations.is_empty() {
                bail!("{}: {} violation(s)", ontograph.display(), violations.len());
            }
        }
        Command::Parse {
            sentence,
            lexicon,
            ast: _,
            fol,
        } => {
            let lexicon = load_lexicon(&lexicon)?;
            let tree = parse_sentence(&sentence, &lexicon).map_err(|e| {
                let caret = format!("{}^", " ".repeat(e.offset()));
                anyhow!("{e}\n  {sentence}\n  {caret}")
            })?;
            if fol {
                writeln!(out, "{}", to_formula(&tree, &lexicon)?)?;
            } else {
                writeln!(out, "{}", serde_json::to_string_pretty(&tree)?)?;
            }
        }
        Command::Eval {
            ontograph,
            statements,
            lexicon,
        } => {
            let key = key_for(&ontograph, &statements, &lexicon)?;
            for e in &key.entries {
                writeln!(out, "{}\t{}", e.id, e.truth)?;
            }
        }
        Command::Keygen {
            ontograph,
            statements,
            lexicon,
            output,
        } => {
            let key = key_for(&ontograph, &statements, &lexicon)?;
            match output {
                Some(path) => fs::write(&path, key.to_json())
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => out.write_all(key.to_json().as_bytes())?,
            }
        }
        Command::Render {
            ontograph,
            output,
            cell_size,
        } => {
            let world = load_world(&ontograph)?;
            let config = RenderConfig {
                cell_size,
                ..RenderConfig::default()
            };
            let svg = render(&world, &config)?;
            fs::write(&output, svg)
                .with_context(|| format!("cannot write {}", output.display()))?;
        }
        Command::Fixtures { output } => {
            for name in write_fixture_experiment(&output)
                .with_context(|| format!("cannot write to {}", output.display()))?
            {
                writeln!(out, "{}", output.join(name).display())?;
            }
        }
        Command::Score {
            keys,
            responses,
            exclude,
            two_sided,
            json,
        } => {
            let keys = keys
                .iter()
                .map(|p| {
                    AnswerKey::from_json(&read(p)?).with_context(|| format!("{}", p.display()))
                })
                .collect::<Result<Vec<_>>>()?;
            let log =
                read_log(&read(&responses)?).with_context(|| format!("{}", responses.display()))?;
            let exclude: BTreeSet<String> = exclude.into_iter().filter(|s| !s.is_empty()).collect();
            let sidedness = if two_sided {
                Sidedness::TwoSided
            } else {
                Sidedness::OneSided
            };
            let report = score_with(&log, &keys, &exclude, sidedness)?;
            out.write_all(
                if json {
                    report.to_json()
                } else {
                    report.to_table()
                }
                .as_bytes(),
            )?;
        }
        Command::Serve {
            experiment_dir,
            port,
            host,
            time_limit,
            grace_seconds,
            results_token,
        } => {
            if time_limit == Some(0) {
                bail!("--time-limit must be positive");
            }
            let options = ServiceOptions {
                time_limit_seconds: time_limit,
                grace_seconds,
            };
            let service = ExperimentService::open(
                &experiment_dir,
                Arc::new(SystemClock::default()),
                options,
            )?;
            if service.experiment_ids().is_empty() {
                bail!("no experiment.json under {}", experiment_dir.display());
            }
            let token = results_token.unwrap_or_else(|| uuid::Uuid::new_v4().simple().to_string());
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async {
                let listener = tokio::net::TcpListener::bind((host.as_str(), port))
                    .await
                    .with_context(|| format!("cannot listen on {host}:{port}"))?;
                eprintln!("listening on http://{}", listener.local_addr()?);
                eprintln!("experiments: {}", service.experiment_ids().join(", "));
                eprintln!("results token: {token}");
                serve(listener, router(Arc::new(service), Some(token))).await?;
                Ok::<_, anyhow::Error>(())
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
