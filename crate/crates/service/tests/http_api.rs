use std::sync::Arc;

use ontograph_core::corpus::fixtures;
use ontograph_service::{
    router, serve, write_fixture_experiment, ExperimentService, ManualClock, ServiceOptions,
    FIXTURE_EXPERIMENT_ID as EXP,
};
use reqwest::{Client, StatusCode};
use serde_json::{json, Value};
use tempfile::TempDir;

struct Server {
    base: String,
    clock: ManualClock,
    http: Client,
    _dir: TempDir,
}

async fn start(token: Option<&str>) -> Server {
    let dir = TempDir::new().unwrap();
    write_fixture_experiment(dir.path()).unwrap();
    let clock = ManualClock::new(0);
    let svc = ExperimentService::open(dir.path(), Arc::new(clock.clone()), ServiceOptions::new())
        .unwrap();
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let app = router(Arc::new(svc), token.map(str::to_owned));
    tokio::spawn(serve(listener, app));
    Server {
        base,
        clock,
        http: Client::new(),
        _dir: dir,
    }
}

impl Server {
    async fn post(&self, path: &str, body: Value) -> (StatusCode, Value) {
        let r = self
            .http
            .post(format!("{}{path}", self.base))
            .json(&body)
            .send()
            .await
            .unwrap();
        (r.status(), r.json().await.unwrap())
    }

    async fn get(&self, path: &str) -> (StatusCode, Value) {
        let r = self
            .http
            .get(format!("{}{path}", self.base))
            .send()
            .await
            .unwrap();
        (r.status(), r.json().await.unwrap())
    }

    async fn session(&self, subject: &str) -> String {
        let (status, body) = self
            .post("/sessions", json!({"experiment": EXP, "subject": subject}))
            .await;
        assert_eq!(status, StatusCode::CREATED, "{body}");
        body["session"].as_str().unwrap().to_owned()
    }
}

fn correct(statement: &str) -> &'static str {
    let truth = fixtures()
        .iter()
        .find_map(|s| s.key.truth(statement))
        .unwrap();
    if truth {
        "true"
    } else {
        "false"
    }
}

#[tokio::test]
async fn full_session() {
    let srv = start(None).await;
    let id = srv.session("alice").await;
    for stage in 0..4 {
        let (status, view) = srv.get(&format!("/sessions/{id}/stage")).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(view["stage"], stage);
        assert_eq!(view["remaining_seconds"], 300);
        let statements = view["statements"].as_array().unwrap();
        assert_eq!(statements.len(), 10);
        assert!(statements.iter().all(|s| s.get("truth").is_none()));
        for s in statements {
            let sid = s["id"].as_str().unwrap();
            let (status, body) = srv
                .post(
                    &format!("/sessions/{id}/answers"),
                    json!({"statement": sid, "answer": correct(sid)}),
                )
                .await;
            assert_eq!((status, body), (StatusCode::OK, json!({"accepted": true})));
        }
        srv.clock.advance_secs(30);
        let (status, body) = srv
            .post(&format!("/sessions/{id}/advance"), json!({}))
            .await;
        assert_eq!(status, StatusCode::OK);
        if stage < 3 {
            assert_eq!(body, json!({"stage": stage + 1}));
        } else {
            assert_eq!(body, json!({"finished": true}));
        }
    }
    let (status, report) = srv.get(&format!("/experiments/{EXP}/results")).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(report["aggregate"]["correctness"], 1.0);
    assert_eq!(report["aggregate"]["n_subjects"], 1);
    let (status, err) = srv.get(&format!("/sessions/{id}/stage")).await;
    assert_eq!(
        (status, err["code"].as_str()),
        (StatusCode::CONFLICT, Some("session_finished"))
    );
}

#[tokio::test]
async fn errors_carry_codes() {
    let srv = start(None).await;
    let (status, err) = srv
        .post("/sessions", json!({"experiment": "nope", "subject": "x"}))
        .await;
    assert_eq!(
        (status, err["code"].as_str()),
        (StatusCode::NOT_FOUND, Some("unknown_experiment"))
    );
    assert!(err["reason"].as_str().unwrap().contains("nope"));

    let (status, err) = srv.post("/sessions", json!({"experiment": EXP})).await;
    assert_eq!(
        (status, err["code"].as_str()),
        (StatusCode::BAD_REQUEST, Some("bad_request"))
    );

    let id = srv.session("bob").await;
    let answers = format!("/sessions/{id}/answers");
    let (status, err) = srv
        .post(
            &answers,
            json!({"statement": "1/1", "answer": "time_exceeded"}),
        )
        .await;
    assert_eq!(
        (status, err["code"].as_str()),
        (StatusCode::BAD_REQUEST, Some("bad_request"))
    );
    // client clocks are not consulted
    let (status, _) = srv
        .post(
            &answers,
            json!({"statement": "1/1", "answer": "dont_know", "elapsed_ms": 1}),
        )
        .await;
    assert_eq!(status, StatusCode::OK);
    let (status, err) = srv
        .post(&answers, json!({"statement": "1/1", "answer": "true"}))
        .await;
    assert_eq!(
        (status, err["code"].as_str()),
        (StatusCode::CONFLICT, Some("duplicate_answer"))
    );

    let (status, err) = srv
        .post(&format!("/sessions/{id}/advance"), json!({}))
        .await;
    assert_eq!(
        (status, err["code"].as_str()),
        (StatusCode::CONFLICT, Some("confirmation_required"))
    );

    let (status, err) = srv.get("/sessions/nope/stage").await;
    assert_eq!(
        (status, err["code"].as_str()),
        (StatusCode::NOT_FOUND, Some("unknown_session"))
    );

    let (status, err) = srv.get("/nowhere").await;
    assert_eq!(
        (status, err["code"].as_str()),
        (StatusCode::NOT_FOUND, Some("not_found"))
    );
}

#[tokio::test]
async fn deadline_over_http() {
    let srv = start(None).await;
    let id = srv.session("carol").await;
    srv.clock.advance_secs(303);
    let (status, err) = srv
        .post(
            &format!("/sessions/{id}/answers"),
            json!({"statement": "1/1", "answer": "true"}),
        )
        .await;
    assert_eq!(
        (status, err["code"].as_str()),
        (StatusCode::CONFLICT, Some("deadline_passed"))
    );
    let (_, view) = srv.get(&format!("/sessions/{id}/stage")).await;
    assert_eq!(
        (view["remaining_seconds"].as_u64(), view["locked"].as_bool()),
        (Some(0), Some(true))
    );
    let (_, report) = srv.get(&format!("/experiments/{EXP}/results")).await;
    assert_eq!(report["per_statement"]["1/1"]["time_exceeded"], 1);
}

#[tokio::test]
async fn results_token() {
    let srv = start(Some("s3cret")).await;
    let url = format!("{}/experiments/{EXP}/results", srv.base);
    let r = srv.http.get(&url).send().await.unwrap();
    assert_eq!(r.status(), StatusCode::UNAUTHORIZED);
    let r = srv
        .http
        .get(&url)
        .header("x-results-token", "wrong")
        .send()
        .await
        .unwrap();
    assert_eq!(r.status(), StatusCode::UNAUTHORIZED);
    let r = srv
        .http
        .get(&url)
        .header("x-results-token", "s3cret")
        .send()
        .await
        .unwrap();
    assert_eq!(r.status(), StatusCode::OK);
}

#[tokio::test]
async fn advance_accepts_empty_body() {
    let srv = start(None).await;
    let id = srv.session("dave").await;
    srv.clock.advance_secs(400);
    let r = srv
        .http
        .post(format!("{}/sessions/{id}/advance", srv.base))
        .send()
        .await
        .unwrap();
    assert_eq!(r.status(), StatusCode::OK);
    assert_eq!(r.json::<Value>().await.unwrap(), json!({"stage": 1}));
}
