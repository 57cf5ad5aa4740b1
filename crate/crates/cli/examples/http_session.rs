//! Drives a service session in-process: create, mutate, undo, and an enumerate job.
//!
//! cargo run -p mutclass-cli --example http_session

use std::time::Duration;

use axum::body::Body;
use axum::http::Request;
use axum::Router;
use http_body_util::BodyExt;
use mutclass_cli::service::{router, AppState};
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Value) -> Value {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let v: Value = serde_json::from_slice(&bytes).unwrap();
    println!("{method} {uri} -> {status}");
    v
}

#[tokio::main]
async fn main() {
    let app = router(AppState::new(Duration::from_secs(600)));
    let doc = json!({ "m": 2, "n": 2, "rows": [[0, 2], [-1, 0]], "name": "B2" });
    let state = call(&app, "POST", "/sessions", json!({ "document": doc, "mode": "principal" })).await;
    let id = state["id"].as_str().unwrap().to_string();
    println!("badges {}", state["badges"]);

    let state = call(&app, "POST", &format!("/sessions/{id}/mutate"), json!({ "k": 1 })).await;
    println!("matrix {}", state["matrix"]["rows"]);
    let frozen = call(&app, "POST", &format!("/sessions/{id}/mutate"), json!({ "k": 3 })).await;
    println!("frozen mutation: {}", frozen["message"]);
    let state = call(&app, "POST", &format!("/sessions/{id}/undo"), Value::Null).await;
    println!("history {}", state["history"]);

    let job = call(&app, "POST", &format!("/sessions/{id}/analyze"), json!({ "kind": "enumerate", "budget": 1000 })).await;
    let uri = format!("/jobs/{}", job["id"].as_str().unwrap());
    loop {
        let req = Request::builder().uri(&uri).body(Body::empty()).unwrap();
        let bytes = app.clone().oneshot(req).await.unwrap().into_body().collect().await.unwrap().to_bytes();
        let v: Value = serde_json::from_slice(&bytes).unwrap();
        if v["status"] != "running" {
            println!("job {}", v["result"]);
            break;
        }
        tokio::time::sleep(Duration::from_millis(10)).await;
    }
}
