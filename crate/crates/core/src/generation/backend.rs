//! Backend interface and the in-process scripted backend.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::prompt::{PromptBundle, EVALUATOR_ARMS};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BackendError {
    #[error("{endpoint}: {message} (after {attempts} attempts)")]
    Transport { endpoint: String, message: String, attempts: u32 },
    #[error("{endpoint}: timed out after {attempts} attempts")]
    Timeout { endpoint: String, attempts: u32 },
    #[error("backend error: {0}")]
    Remote(String),
    #[error("script exhausted after {0} tokens")]
    Exhausted(usize),
    #[error("empty script")]
    EmptyScript,
}

/// The neural side of generation: answers evaluator prompts with one of
/// [`EVALUATOR_ARMS`] and selector prompts with one candidate.
pub trait Backend {
    fn evaluate(&mut self, prompt: &PromptBundle) -> Result<String, BackendError>;
    fn select(&mut self, prompt: &PromptBundle) -> Result<String, BackendError>;
}

impl<B: Backend + ?Sized> Backend for &mut B {
    fn evaluate(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        (**self).evaluate(prompt)
    }

    fn select(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        (**self).select(prompt)
    }
}

impl<B: Backend + ?Sized> Backend for alloc::boxed::Box<B> {
    fn evaluate(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        (**self).evaluate(prompt)
    }

    fn select(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        (**self).select(prompt)
    }
}

/// Replays a fixed evaluator reply and token sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptedBackend {
    evaluate_reply: String,
    script: VecDeque<String>,
    served: usize,
}

impl ScriptedBackend {
    /// Agrees to generate, then answers selector prompts with `script` in
    /// order.
    pub fn new<S: Into<String>>(script: impl IntoIterator<Item = S>) -> Result<ScriptedBackend, BackendError> {
        let script: VecDeque<String> = script.into_iter().map(Into::into).collect();
        if script.is_empty() {
            return Err(BackendError::EmptyScript);
        }
        Ok(ScriptedBackend { evaluate_reply: EVALUATOR_ARMS[0].to_string(), script, served: 0 })
    }

    /// Declines every oracle.
    pub fn declining() -> ScriptedBackend {
        ScriptedBackend { evaluate_reply: EVALUATOR_ARMS[1].to_string(), script: VecDeque::new(), served: 0 }
    }

    /// Replaces the evaluator reply, verbatim.
    pub fn with_evaluate_reply(mut self, reply: impl Into<String>) -> ScriptedBackend {
        self.evaluate_reply = reply.into();
        self
    }

    pub fn remaining(&self) -> usize {
        self.script.len()
    }
}

impl Backend for ScriptedBackend {
    fn evaluate(&mut self, _prompt: &PromptBundle) -> Result<String, BackendError> {
        Ok(self.evaluate_reply.clone())
    }

    fn select(&mut self, _prompt: &PromptBundle) -> Result<String, BackendError> {
        let t = self.script.pop_front().ok_or(BackendError::Exhausted(self.served))?;
        self.served += 1;
        Ok(t)
    }
}

/// Scripts for a whole run, keyed by generation-context id
/// ([`crate::engine::GenerationContext::id`]). `None` declines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScriptBook {
    entries: BTreeMap<String, Option<Vec<String>>>,
}

impl ScriptBook {
    pub fn new() -> ScriptBook {
        ScriptBook::default()
    }

    pub fn insert(&mut self, context_id: impl Into<String>, script: Option<Vec<String>>) {
        self.entries.insert(context_id.into(), script);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, context_id: &str) -> Option<&Option<Vec<String>>> {
        self.entries.get(context_id)
    }

    /// Backend for one context; unknown contexts decline.
    pub fn backend_for(&self, context_id: &str) -> ScriptedBackend {
        match self.entries.get(context_id) {
            Some(Some(tokens)) if !tokens.is_empty() => {
                ScriptedBackend::new(tokens.iter().cloned()).unwrap_or_else(|_| ScriptedBackend::declining())
            }
            _ => ScriptedBackend::declining(),
        }
    }
}
