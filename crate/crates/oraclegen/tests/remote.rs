mod common;

use std::fs;
use std::sync::atomic::Ordering;
use std::time::Duration;

use common::{config, Server};
use oraclegen::commands;
use oraclegen::remote::RemoteBackend;
use oraclegen_core::generation::{Backend, BackendError, HeuristicBackend, HeuristicOptions, PromptBundle, PromptFields};
use serde_json::{json, Value};

/// Answers with the in-process heuristic backend, rebuilt from `meta`.
fn heuristic_server() -> Server {
    Server::start(|path, body| {
        let fields: PromptFields = serde_json::from_value(body["meta"].clone()).unwrap();
        assert_eq!(body["prompt"], Value::String(PromptBundle::from_fields(fields.clone()).rendered_text));
        let prompt = PromptBundle::from_fields(fields);
        let mut b = HeuristicBackend::new(HeuristicOptions::default());
        let choice = match path {
            "/v1/evaluate" => b.evaluate(&prompt),
            "/v1/select" => b.select(&prompt),
            _ => return (404, json!({"error": "no such route"}).to_string()),
        };
        match choice {
            Ok(c) => (200, json!({ "choice": c }).to_string()),
            Err(e) => (500, json!({ "error": e.to_string() }).to_string()),
        }
    })
}

fn bundle() -> PromptBundle {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "heuristic");
    let model = oraclegen::project::load_model(&cfg.source_root, &cfg.signature_files).unwrap();
    let ctx = oraclegen::runner::contexts(&model, false, |_, _| true).remove(0);
    oraclegen_core::generation::render_evaluator_prompt(&ctx)
}

#[test]
fn remote_evaluation_matches_in_process() {
    let server = heuristic_server();
    let local = tempfile::tempdir().unwrap();
    let remote = tempfile::tempdir().unwrap();
    let gt = common::fixtures().join("groundtruth.jsonl");
    let a = commands::evaluate(&config(local.path(), "heuristic"), &gt).unwrap();
    let mut cfg = config(remote.path(), &format!("remote:{}", server.url));
    cfg.parallelism = 3;
    let b = commands::evaluate(&cfg, &gt).unwrap();
    assert_eq!(a.counts, b.counts);
    for f in ["outcomes.jsonl", "report.txt", "report.json", "review.jsonl"] {
        assert_eq!(
            fs::read_to_string(local.path().join(f)).unwrap(),
            fs::read_to_string(remote.path().join(f)).unwrap(),
            "{f}"
        );
    }
    assert!(server.requests.load(Ordering::SeqCst) >= 62);
}

#[test]
fn error_status_is_not_retried() {
    let server = Server::start(|_, _| (503, json!({"error": "model not loaded"}).to_string()));
    let mut b = RemoteBackend::new(&server.url, Duration::from_secs(5), 3);
    let err = b.evaluate(&bundle()).unwrap_err();
    assert_eq!(err, BackendError::Remote(format!("{}/v1/evaluate: HTTP 503: model not loaded", server.url)));
    assert_eq!(server.requests.load(Ordering::SeqCst), 1);
}

#[test]
fn malformed_reply_is_an_error() {
    let server = Server::start(|_, _| (200, "{\"pick\": 1}".into()));
    let mut b = RemoteBackend::new(&server.url, Duration::from_secs(5), 0);
    assert!(matches!(b.select(&bundle()), Err(BackendError::Remote(m)) if m.contains("malformed")));
}

#[test]
fn transport_errors_are_retried_then_reported() {
    let server = Server::hang_up();
    let mut b = RemoteBackend::new(&server.url, Duration::from_secs(5), 2);
    match b.evaluate(&bundle()) {
        Err(BackendError::Transport { endpoint, attempts, .. }) => {
            assert_eq!(attempts, 3);
            assert_eq!(endpoint, format!("{}/v1/evaluate", server.url));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(server.connections.load(Ordering::SeqCst), 3);
}

#[test]
fn unanswered_requests_time_out() {
    let server = Server::silent();
    let mut b = RemoteBackend::new(&server.url, Duration::from_millis(200), 1);
    assert_eq!(
        b.select(&bundle()),
        Err(BackendError::Timeout { endpoint: format!("{}/v1/select", server.url), attempts: 2 })
    );
}

#[test]
fn unreachable_backend_is_fatal_and_named() {
    let url = common::closed_port_url();
    let dir = tempfile::tempdir().unwrap();
    let err = commands::evaluate(&config(dir.path(), &format!("remote:{url}")), &common::fixtures().join("groundtruth.jsonl"))
        .unwrap_err();
    assert!(format!("{err:#}").contains(&url), "{err:#}");
    assert!(!dir.path().join("outcomes.jsonl").exists());
}
