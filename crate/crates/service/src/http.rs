//! JSON over HTTP in front of [`ExperimentService`].
//!
//! | method | path | body | reply |
//! |---|---|---|---|
//! | POST | `/sessions` | `{experiment, subject}` | `{session}` |
//! | GET | `/sessions/{id}/stage` | | stage view |
//! | POST | `/sessions/{id}/answers` | `{statement, answer}` | `{accepted: true}` |
//! | POST | `/sessions/{id}/advance` | `{confirm_dont_know}` | `{stage}` or `{finished: true}` |
//! | GET | `/experiments/{id}/results` | | score report |
//!
//! Failures reply `{code, reason}`. The results route requires the
//! `x-results-token` header when the router was built with a token.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::service::{ExperimentService, ServiceError, SubjectAnswer};

pub const RESULTS_TOKEN_HEADER: &str = "x-results-token";

#[derive(Clone)]
struct AppState {
    service: Arc<ExperimentService>,
    results_token: Option<Arc<str>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CreateSession {
    pub experiment: String,
    pub subject: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SubmitAnswer {
    pub statement: String,
    pub answer: SubjectAnswer,
}

#[derive(Debug, Default, Serialize, Deserialize)]
pub struct Advance {
    #[serde(default)]
    pub confirm_dont_know: bool,
}

struct ApiError {
    status: StatusCode,
    code: &'static str,
    reason: String,
}

impl From<ServiceError> for ApiError {
    fn from(e: ServiceError) -> Self {
        let status = match e {
            ServiceError::UnknownExperiment(_)
            | ServiceError::UnknownSession(_)
            | ServiceError::UnknownStatement(_) => StatusCode::NOT_FOUND,
            ServiceError::NotInCurrentStage(_)
            | ServiceError::DuplicateAnswer(_)
            | ServiceError::DeadlinePassed
            | ServiceError::SessionFinished
            | ServiceError::ConfirmationRequired(_)
            | ServiceError::SubjectExists(_) => StatusCode::CONFLICT,
            ServiceError::EmptySubject => StatusCode::BAD_REQUEST,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError {
            status,
            code: e.code(),
            reason: e.to_string(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(json!({ "code": self.code, "reason": self.reason })),
        )
            .into_response()
    }
}

fn bad_request(reason: String) -> ApiError {
    ApiError {
        status: StatusCode::BAD_REQUEST,
        code: "bad_request",
        reason,
    }
}

/// Parses a JSON body; an empty body reads as `{}`.
fn body<T: DeserializeOwned>(bytes: &Bytes) -> Result<T, ApiError> {
    let raw: &[u8] = if bytes.iter().all(u8::is_ascii_whitespace) {
        b"{}"
    } else {
        bytes
    };
    serde_json::from_slice(raw).map_err(|e| bad_request(format!("invalid request body: {e}")))
}

/// Runs a service call off the async workers; calls wait on disk syncs.
async fn call<T, F>(state: &AppState, f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce(&ExperimentService) -> Result<T, ServiceError> + Send + 'static,
{
    let service = state.service.clone();
    tokio::task::spawn_blocking(move || f(&service))
        .await
        .map_err(|e| ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            code: "internal",
            reason: e.to_string(),
        })?
        .map_err(ApiError::from)
}

async fn create_session(State(state): State<AppState>, bytes: Bytes) -> Result<Response, ApiError> {
    let req: CreateSession = body(&bytes)?;
    let id = call(&state, move |s| {
        s.create_session(&req.experiment, &req.subject)
    })
    .await?;
    Ok((StatusCode::CREATED, Json(json!({ "session": id }))).into_response())
}

async fn get_stage(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let view = call(&state, move |s| s.get_stage(&id)).await?;
    Ok(Json(view).into_response())
}

async fn submit_answer(
    State(state): State<AppState>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> Result<Response, ApiError> {
    let req: SubmitAnswer = body(&bytes)?;
    call(&state, move |s| {
        s.submit_answer(&id, &req.statement, req.answer)
    })
    .await?;
    Ok(Json(json!({ "accepted": true })).into_response())
}

async fn advance(
    State(state): State<AppState>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> Result<Response, ApiError> {
    let req: Advance = body(&bytes)?;
    let outcome = call(&state, move |s| s.advance(&id, req.confirm_dont_know)).await?;
    Ok(Json(outcome).into_response())
}

async fn results(
    State(state): State<AppState>,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    if let Some(token) = &state.results_token {
        let given = headers
            .get(RESULTS_TOKEN_HEADER)
            .and_then(|v| v.to_str().ok());
        if given != Some(token) {
            return Err(ApiError {
                status: StatusCode::UNAUTHORIZED,
                code: "unauthorized",
                reason: format!("results need a valid {RESULTS_TOKEN_HEADER} header"),
            });
        }
    }
    let report = call(&state, move |s| s.results(&id)).await?;
    Ok(Json(report).into_response())
}

async fn not_found() -> ApiError {
    ApiError {
        status: StatusCode::NOT_FOUND,
        code: "not_found",
        reason: "no such route".into(),
    }
}

pub fn router(service: Arc<ExperimentService>, results_token: Option<String>) -> Router {
    let state = AppState {
        service,
        results_token: results_token.map(Arc::from),
    };
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/stage", get(get_stage))
        .route("/sessions/{id}/answers", post(submit_answer))
        .route("/sessions/{id}/advance", post(advance))
        .route("/experiments/{id}/results", get(results))
        .fallback(not_found)
        .with_state(state)
}

/// Serves until the listener fails.
pub async fn serve(listener: tokio::net::TcpListener, app: Router) -> std::io::Result<()> {
    axum::serve(listener, app).await
}
