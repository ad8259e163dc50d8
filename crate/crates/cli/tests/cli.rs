use std::collections::BTreeSet;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::process::{Command, Output, Stdio};

use ontograph_core::corpus::{fixtures, synthetic_log};
use ontograph_core::scoring::{score, write_log};
use tempfile::TempDir;

fn ontograph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ontograph"))
        .args(args)
        .output()
        .unwrap()
}

fn fixture_dir() -> TempDir {
    let dir = TempDir::new().unwrap();
    let out = ontograph(&["fixtures", "-o", dir.path().to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    dir
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_tab_separated_truths() {
    let d = fixture_dir();
    let args = [
        "eval",
        &p(&d, "t_two.ontograph.json"),
        &p(&d, "t_two.statements.json"),
        "--lexicon",
        &p(&d, "lexicon.json"),
    ];
    let out = ontograph(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "2/2\ttrue"), "{text}");
    assert_eq!(text.lines().count(), 10);
    assert_eq!(stdout(&ontograph(&args)), text);
}

#[test]
fn keygen_matches_shipped_key() {
    let d = fixture_dir();
    let key = p(&d, "generated.json");
    let out = ontograph(&[
        "keygen",
        &p(&d, "t_three.ontograph.json"),
        &p(&d, "t_three.statements.json"),
        "--lexicon",
        &p(&d, "lexicon.json"),
        "-o",
        &key,
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(key).unwrap(),
        std::fs::read_to_string(p(&d, "t_three.key.json")).unwrap()
    );
}

#[test]
fn parse_errors_are_located() {
    let d = fixture_dir();
    let out = ontograph(&[
        "parse",
        "Mary xyzzies Tom.",
        "--lexicon",
        &p(&d, "lexicon.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("offset 5"), "{err}");
}

#[test]
fn parse_outputs() {
    let d = fixture_dir();
    let lex = p(&d, "lexicon.json");
    let fol = ontograph(&[
        "parse",
        "Mary does not see Tom.",
        "--lexicon",
        &lex,
        "--fol",
    ]);
    assert_eq!(stdout(&fol).trim(), "¬sees(Mary, Tom)");
    let ast = ontograph(&[
        "parse",
        "Mary does not see Tom.",
        "--lexicon",
        &lex,
        "--ast",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&ast)).unwrap();
    assert_eq!(v["simple"]["subject"]["proper"], "Mary");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ontograph(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ontograph(&["eval", "only-one-arg"]).status.code(), Some(2));
    assert_eq!(
        ontograph(&["parse", "x.", "--lexicon", "l", "--ast", "--fol"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn validate_reports_violations() {
    let d = fixture_dir();
    assert!(ontograph(&["validate", &p(&d, "t_one.ontograph.json")])
        .status
        .success());
    let bad = p(&d, "bad.json");
    let text = std::fs::read_to_string(p(&d, "t_two.ontograph.json"))
        .unwrap()
        .replacen("\"sees\"", "\"admires\"", 1);
    std::fs::write(&bad, text).unwrap();
    let out = ontograph(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stdout(&out).starts_with("undeclared_relation\t"),
        "{}",
        stdout(&out)
    );
    assert_eq!(
        ontograph(&["validate", &p(&d, "missing.json")])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn render_writes_svg() {
    let d = fixture_dir();
    let svg = p(&d, "out.svg");
    assert!(
        ontograph(&["render", &p(&d, "t_four.ontograph.json"), "-o", &svg])
            .status
            .success()
    );
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text, std::fs::read_to_string(p(&d, "t_four.svg")).unwrap());
}

fn write_synthetic(d: &TempDir) -> String {
    let log = p(d, "responses.ndjson");
    std::fs::write(&log, write_log(&synthetic_log())).unwrap();
    log
}

fn key_args(d: &TempDir) -> Vec<String> {
    ["t_one", "t_two", "t_three", "t_four"]
        .iter()
        .flat_map(|w| ["--key".to_owned(), p(d, &format!("{w}.key.json"))])
        .collect()
}

#[test]
fn score_table_matches_library() {
    let d = fixture_dir();
    let log = write_synthetic(&d);
    let mut args = vec!["score".to_owned(), "--responses".into(), log];
    args.extend(key_args(&d));
    let out = Command::new(env!("CARGO_BIN_EXE_ontograph"))
        .args(&args)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let keys: Vec<_> = fixtures().into_iter().map(|s| s.key).collect();
    let expected = score(&synthetic_log(), &keys, &BTreeSet::new()).unwrap();
    assert_eq!(stdout(&out), expected.to_table());

    args.extend([
        "--exclude".into(),
        "1/3,1/10,2/7,2/9".into(),
        "--json".into(),
    ]);
    let out = Command::new(env!("CARGO_BIN_EXE_ontograph"))
        .args(&args)
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["aggregate"]["n_statements"], 36);
    assert_eq!(v["aggregate"]["decision_rate"], 0.9);
}

#[test]
fn score_rejects_unknown_statements() {
    let d = fixture_dir();
    let log = write_synthetic(&d);
    let out = ontograph(&[
        "score",
        "--key",
        &p(&d, "t_one.key.json"),
        "--responses",
        &log,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2/1"));
}

#[test]
fn serve_answers_http() {
    let d = fixture_dir();
    let mut child = Command::new(env!("CARGO_BIN_EXE_ontograph"))
        .args([
            "serve",
            "--experiment-dir",
            d.path().to_str().unwrap(),
            "--port",
            "0",
            "--results-token",
            "tok",
        ])
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut lines = BufReader::new(child.stderr.take().unwrap()).lines();
    let first = lines.next().unwrap().unwrap();
    let base = first.strip_prefix("listening on ").unwrap().to_owned();
    let rt = tokio::runtime::Runtime::new().unwrap();
    let status = rt.block_on(async {
        let c = reqwest::Client::new();
        let r = c
            .post(format!("{base}/sessions"))
            .json(&serde_json::json!({"experiment": "fixtures", "subject": "x"}))
            .send()
            .await
            .unwrap();
        assert_eq!(r.status().as_u16(), 201);
        c.get(format!("{base}/experiments/fixtures/results"))
            .header("x-results-token", "tok")
            .send()
            .await
            .unwrap()
            .status()
    });
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(status.is_success());
    assert!(Path::new(&p(&d, "sessions.ndjson")).exists());
}
