//! Session-oriented HTTP API for interactive mutation.
//!
//! Sessions and jobs live in memory and are dropped once unused for longer than
//! the TTL. Requests to one session are serialized by a per-session lock. Class
//! enumeration and classification run as jobs on the blocking pool and are
//! polled through `GET /jobs/{id}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use mutclass::classify::{decide_finite_type, explore_with, scan, Budget, ExploreOptions};
use mutclass::io::{self, MatrixDocument};
use mutclass::{Diagram, ExtendedMatrix};
use serde_json::{json, Value};

/// Finite-type badges are computed inline only up to this rank; larger
/// sessions report `null` and can request a `classify` job.
pub const BADGE_RANK_LIMIT: usize = 8;
pub const DEFAULT_BUDGET: usize = 100_000;
pub const MAX_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Principal,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Principal => "principal",
        }
    }
}

#[derive(Debug)]
pub struct Session {
    pub id: String,
    pub mode: Mode,
    pub name: Option<String>,
    pub initial: ExtendedMatrix,
    pub current: ExtendedMatrix,
    /// Applied mutations, 0-based.
    pub history: Vec<usize>,
    /// Finite type of the principal diagram; `Some(None)` when above the rank limit.
    finite_type: Option<Option<bool>>,
}

struct Entry<T> {
    value: T,
    touched: Instant,
}

#[derive(Debug, Clone)]
enum JobStatus {
    Running,
    Done(Value),
    Failed(String),
}

#[derive(Debug, Clone)]
struct Job {
    session: String,
    kind: String,
    status: JobStatus,
}

struct Shared {
    sessions: Mutex<HashMap<String, Entry<Arc<tokio::sync::Mutex<Session>>>>>,
    jobs: Mutex<HashMap<String, Entry<Job>>>,
    ttl: Duration,
}

#[derive(Clone)]
pub struct AppState {
    shared: Arc<Shared>,
}

impl AppState {
    pub fn new(ttl: Duration) -> AppState {
        AppState {
            shared: Arc::new(Shared {
                sessions: Mutex::new(HashMap::new()),
                jobs: Mutex::new(HashMap::new()),
                ttl,
            }),
        }
    }

    /// Drops sessions and jobs idle for longer than the TTL.
    pub fn evict(&self) {
        let now = Instant::now();
        let ttl = self.shared.ttl;
        self.shared
            .sessions
            .lock()
            .unwrap()
            .retain(|_, e| now.duration_since(e.touched) <= ttl);
        self.shared
            .jobs
            .lock()
            .unwrap()
            .retain(|_, e| matches!(e.value.status, JobStatus::Running) || now.duration_since(e.touched) <= ttl);
    }

    pub fn session_count(&self) -> usize {
        self.shared.sessions.lock().unwrap().len()
    }

    fn session(&self, id: &str) -> Result<Arc<tokio::sync::Mutex<Session>>, ApiError> {
        self.evict();
        let mut map = self.shared.sessions.lock().unwrap();
        let entry = map
            .get_mut(id)
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session {id}")))?;
        entry.touched = Instant::now();
        Ok(entry.value.clone())
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn new(status: StatusCode, kind: &str, message: impl Into<String>) -> ApiError {
        ApiError {
            status,
            body: json!({ "error": kind, "message": message.into() }),
        }
    }

    fn unprocessable(message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_request", message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

fn parse_body(body: &Bytes) -> Result<Value, ApiError> {
    serde_json::from_slice(body).map_err(|e| {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "malformed_json", e.to_string())
    })
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_state))
        .route("/sessions/{id}/mutate", post(mutate_session))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/analyze", post(analyze))
        .route("/jobs/{id}", get(get_job))
        .with_state(state)
}

pub async fn serve(port: u16, ttl: Duration) -> std::io::Result<()> {
    let state = AppState::new(ttl);
    let sweeper = state.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(ttl.max(Duration::from_secs(1)));
        loop {
            tick.tick().await;
            sweeper.evict();
        }
    });
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    axum::serve(listener, router(state)).await
}

fn certificate_badge(b: &ExtendedMatrix) -> Value {
    match scan(b) {
        Some(p) => json!({
            "kind": p.kind.name(),
            "triangle": [p.triangle.i + 1, p.triangle.j + 1, p.triangle.r + 1],
        }),
        None => Value::Null,
    }
}

async fn finite_type_badge(session: &mut Session) -> Option<bool> {
    if let Some(known) = session.finite_type {
        return known;
    }
    let gamma = Diagram::of_exchange(session.initial.principal());
    let answer = if gamma.size() > BADGE_RANK_LIMIT {
        None
    } else {
        tokio::task::spawn_blocking(move || decide_finite_type(&gamma).ok().map(|f| f.is_finite()))
            .await
            .ok()
            .flatten()
    };
    // mutation-invariant, so computed once per session
    session.finite_type = Some(answer);
    answer
}

/// JSON view of a session.
pub fn state_json(s: &Session, finite_type: Option<bool>) -> Value {
    let d = Diagram::of_extended(&s.current);
    let mut v = json!({
        "id": s.id,
        "mode": s.mode.name(),
        "matrix": MatrixDocument::from_extended(&s.current, s.name.clone()).to_value(),
        "diagram": io::diagram_json(&d),
        "history": s.history.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "max_weight": io::int_json(&d.max_weight()),
        "badges": {
            "finite_type": finite_type,
            "certificate": certificate_badge(&s.current),
        },
    });
    if let Some(name) = &s.name {
        v["name"] = json!(name);
    }
    v
}

async fn respond(session: &mut Session, status: StatusCode) -> Response {
    let ft = finite_type_badge(session).await;
    (status, Json(state_json(session, ft))).into_response()
}

async fn create_session(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    state.evict();
    let v = parse_body(&body)?;
    let doc_v = v
        .get("document")
        .ok_or_else(|| ApiError::unprocessable("field `document` is required"))?;
    let mode = match v.get("mode").and_then(Value::as_str) {
        None | Some("plain") => Mode::Plain,
        Some("principal") => Mode::Principal,
        Some(other) => return Err(ApiError::unprocessable(format!("unknown mode {other}"))),
    };
    let invalid = |e: io::IoError| ApiError {
        status: StatusCode::UNPROCESSABLE_ENTITY,
        body: e.to_json(),
    };
    let doc = MatrixDocument::from_value(doc_v).map_err(invalid)?;
    let b = doc.to_extended().map_err(invalid)?;
    let initial = match mode {
        Mode::Plain => b,
        Mode::Principal if b.rows() == b.mutable_count() => ExtendedMatrix::principal_extension(b.principal()),
        Mode::Principal => {
            return Err(ApiError::unprocessable(
                "principal mode needs a square document without frozen rows",
            ))
        }
    };
    let id = uuid::Uuid::new_v4().simple().to_string();
    let mut session = Session {
        id: id.clone(),
        mode,
        name: doc.name,
        current: initial.clone(),
        initial,
        history: Vec::new(),
        finite_type: None,
    };
    let ft = finite_type_badge(&mut session).await;
    let body = state_json(&session, ft);
    state.shared.sessions.lock().unwrap().insert(
        id,
        Entry {
            value: Arc::new(tokio::sync::Mutex::new(session)),
            touched: Instant::now(),
        },
    );
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

async fn get_state(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let session = state.session(&id)?;
    let mut s = session.lock().await;
    Ok(respond(&mut s, StatusCode::OK).await)
}

async fn mutate_session(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let session = state.session(&id)?;
    let v = parse_body(&body)?;
    let k = v
        .get("k")
        .and_then(Value::as_i64)
        .ok_or_else(|| ApiError::unprocessable("field `k` must be an integer"))?;
    let mut s = session.lock().await;
    let (m, n) = (s.current.rows() as i64, s.current.mutable_count() as i64);
    if k < 1 || k > m {
        return Err(ApiError::unprocessable(format!("index {k} is out of range 1..={m}")));
    }
    if k > n {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            "frozen_index",
            format!("index {k} is frozen; only 1..={n} can be mutated"),
        ));
    }
    let k = (k - 1) as usize;
    s.current = s
        .current
        .mutate(k)
        .map_err(|e| ApiError::unprocessable(io::describe_exchange_error(&e).0))?;
    s.history.push(k);
    Ok(respond(&mut s, StatusCode::OK).await)
}

async fn undo(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let session = state.session(&id)?;
    let mut s = session.lock().await;
    if s.history.pop().is_none() {
        return Err(ApiError::new(StatusCode::CONFLICT, "empty_history", "nothing to undo"));
    }
    s.current = s
        .initial
        .mutate_seq(&s.history)
        .expect("history holds mutable indices");
    Ok(respond(&mut s, StatusCode::OK).await)
}

fn run_job(kind: &str, b: &ExtendedMatrix, budget: usize) -> Result<Value, String> {
    match kind {
        "classify" => {
            crate::classify_value(&Diagram::of_exchange(b.principal())).map_err(|e| e.to_string())
        }
        "enumerate" => {
            let opts = ExploreOptions {
                budget: Budget::nodes(budget),
                ..ExploreOptions::default()
            };
            Ok(io::class_report_json(&explore_with(b, &opts)))
        }
        _ => unreachable!("kind is checked before the job starts"),
    }
}

async fn analyze(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    let session = state.session(&id)?;
    let v = parse_body(&body)?;
    let kind = match v.get("kind").and_then(Value::as_str) {
        Some(k @ ("classify" | "enumerate")) => k.to_string(),
        _ => return Err(ApiError::unprocessable("`kind` must be \"classify\" or \"enumerate\"")),
    };
    let budget = match v.get("budget") {
        None | Some(Value::Null) => DEFAULT_BUDGET,
        Some(x) => match x.as_u64() {
            Some(b) if (1..=MAX_BUDGET as u64).contains(&b) => b as usize,
            _ => return Err(ApiError::unprocessable(format!("`budget` must be in 1..={MAX_BUDGET}"))),
        },
    };
    let b = session.lock().await.current.clone();
    let job_id = uuid::Uuid::new_v4().simple().to_string();
    let job = Job {
        session: id,
        kind: kind.clone(),
        status: JobStatus::Running,
    };
    let reply = job_json(&job_id, &job);
    state.shared.jobs.lock().unwrap().insert(
        job_id.clone(),
        Entry {
            value: job,
            touched: Instant::now(),
        },
    );
    let shared = state.shared.clone();
    tokio::spawn(async move {
        let status = match tokio::task::spawn_blocking(move || run_job(&kind, &b, budget)).await {
            Ok(Ok(v)) => JobStatus::Done(v),
            Ok(Err(e)) => JobStatus::Failed(e),
            Err(e) => JobStatus::Failed(e.to_string()),
        };
        if let Some(entry) = shared.jobs.lock().unwrap().get_mut(&job_id) {
            entry.value.status = status;
            entry.touched = Instant::now();
        }
    });
    Ok((StatusCode::ACCEPTED, Json(reply)).into_response())
}

fn job_json(id: &str, job: &Job) -> Value {
    let mut v = json!({ "id": id, "session": job.session, "kind": job.kind });
    match &job.status {
        JobStatus::Running => v["status"] = json!("running"),
        JobStatus::Done(result) => {
            v["status"] = json!("done");
            v["result"] = result.clone();
        }
        JobStatus::Failed(e) => {
            v["status"] = json!("failed");
            v["error"] = json!(e);
        }
    }
    v
}

async fn get_job(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    state.evict();
    let mut jobs = state.shared.jobs.lock().unwrap();
    let entry = jobs
        .get_mut(&id)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_job", format!("no job {id}")))?;
    entry.touched = Instant::now();
    Ok(Json(job_json(&id, &entry.value)).into_response())
}
