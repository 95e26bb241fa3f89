//! HTTP backend speaking the `/v1/evaluate` and `/v1/select` protocol.
//!
//! Requests are `POST` with `{"prompt", "candidates", "meta"}` where `meta`
//! holds the structured prompt fields; a `200` reply is `{"choice": ...}`
//! and any other status carries `{"error": ...}`. Transport failures are
//! retried; error statuses are not.

use std::io;
use std::time::Duration;

use oraclegen_core::generation::{Backend, BackendError, PromptBundle};
use serde::Deserialize;
use serde_json::json;

#[derive(Clone, Debug)]
pub struct RemoteBackend {
    endpoint: String,
    agent: ureq::Agent,
    retries: u32,
}

#[derive(Deserialize)]
struct Choice {
    choice: String,
}

#[derive(Deserialize)]
struct ErrorBody {
    error: String,
}

fn is_timeout(e: &ureq::Transport) -> bool {
    let mut src = std::error::Error::source(e);
    while let Some(s) = src {
        if let Some(io) = s.downcast_ref::<io::Error>() {
            return matches!(io.kind(), io::ErrorKind::TimedOut | io::ErrorKind::WouldBlock);
        }
        src = s.source();
    }
    e.to_string().contains("timed out")
}

impl RemoteBackend {
    /// `endpoint` is the server base URL, e.g. `http://127.0.0.1:8080`.
    pub fn new(endpoint: &str, timeout: Duration, retries: u32) -> RemoteBackend {
        let agent = ureq::AgentBuilder::new().timeout(timeout).build();
        RemoteBackend { endpoint: endpoint.trim_end_matches('/').to_string(), agent, retries }
    }

    pub fn endpoint(&self) -> &str {
        &self.endpoint
    }

    fn post(&self, path: &str, prompt: &PromptBundle) -> Result<String, BackendError> {
        let url = format!("{}{path}", self.endpoint);
        let body = json!({
            "prompt": prompt.rendered_text,
            "candidates": prompt.structured.candidates,
            "meta": prompt.structured,
        });
        let mut attempts = 0;
        loop {
            attempts += 1;
            match self.agent.post(&url).send_json(&body) {
                Ok(resp) => {
                    return resp
                        .into_json::<Choice>()
                        .map(|c| c.choice)
                        .map_err(|e| BackendError::Remote(format!("{url}: malformed reply: {e}")));
                }
                Err(ureq::Error::Status(code, resp)) => {
                    let msg = resp.into_json::<ErrorBody>().map(|b| b.error).unwrap_or_default();
                    return Err(BackendError::Remote(format!("{url}: HTTP {code}: {msg}")));
                }
                Err(ureq::Error::Transport(t)) => {
                    if attempts > self.retries {
                        return Err(if is_timeout(&t) {
                            BackendError::Timeout { endpoint: url, attempts }
                        } else {
                            BackendError::Transport { endpoint: url, message: t.to_string(), attempts }
                        });
                    }
                }
            }
        }
    }
}

impl Backend for RemoteBackend {
    fn evaluate(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        self.post("/v1/evaluate", prompt)
    }

    fn select(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        self.post("/v1/select", prompt)
    }
}
