//! The generation loop: ask the evaluator whether an oracle is possible,
//! then pick one admissible token at a time until `;`.

mod backend;
mod heuristic;
mod prompt;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use backend::{Backend, BackendError, ScriptBook, ScriptedBackend};
pub use heuristic::{HeuristicBackend, HeuristicOptions};
pub use prompt::{
    render_evaluator_prompt, render_selector_prompt, PromptBudget, PromptBundle, PromptFields, EVALUATOR_ARMS,
    FILL_MARKER, REMINDER,
};

use crate::engine::{GenerationContext, TokenEngine, DEFAULT_MAX_TOKENS};
use crate::grammar::{canonicalize, PartialOracle};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenerationError {
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error("invalid evaluator reply: {0:?}")]
    InvalidEvaluatorReply(String),
}

/// Asks `evaluator` whether an oracle should be generated for `ctx`.
pub fn should_generate(ctx: &GenerationContext<'_>, evaluator: &mut dyn Backend) -> Result<bool, GenerationError> {
    let reply = evaluator.evaluate(&render_evaluator_prompt(ctx))?;
    evaluator_arm(&reply)
}

/// Matches an evaluator reply against [`EVALUATOR_ARMS`] by exact prefix.
pub fn evaluator_arm(reply: &str) -> Result<bool, GenerationError> {
    let r = reply.trim_start();
    if r.starts_with(EVALUATOR_ARMS[0]) {
        Ok(true)
    } else if r.starts_with(EVALUATOR_ARMS[1]) {
        Ok(false)
    } else {
        Err(GenerationError::InvalidEvaluatorReply(reply.to_string()))
    }
}

/// Source of elapsed time for [`Limits::max_seconds`].
pub trait Clock {
    fn elapsed_seconds(&self) -> f64;
}

/// A clock that never advances.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed_seconds(&self) -> f64 {
        0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct Limits {
    pub max_tokens: usize,
    pub max_seconds: Option<f64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_tokens: DEFAULT_MAX_TOKENS, max_seconds: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum OracleStatus {
    Generated,
    Declined,
    Aborted,
}

impl OracleStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleStatus::Generated => "generated",
            OracleStatus::Declined => "declined",
            OracleStatus::Aborted => "aborted",
        }
    }
}

/// One accepted selector choice.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct TraceStep {
    pub candidates: Vec<String>,
    pub chosen: String,
    /// The first reply was off the list.
    pub retried: bool,
    /// The selector prompt lost context to the budget.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct OracleResult {
    pub status: OracleStatus,
    /// Canonical oracle when generated, empty otherwise.
    pub oracle_text: String,
    pub trace: Vec<TraceStep>,
    pub diagnostic: Option<String>,
}

impl OracleResult {
    fn declined() -> OracleResult {
        OracleResult { status: OracleStatus::Declined, oracle_text: String::new(), trace: Vec::new(), diagnostic: None }
    }

    fn aborted(trace: Vec<TraceStep>, diagnostic: String) -> OracleResult {
        OracleResult { status: OracleStatus::Aborted, oracle_text: String::new(), trace, diagnostic: Some(diagnostic) }
    }

    pub fn is_generated(&self) -> bool {
        self.status == OracleStatus::Generated
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GenerateOptions {
    pub limits: Limits,
    pub budget: PromptBudget,
}

/// [`generate_oracle_with`] without a time limit clock.
pub fn generate_oracle(
    ctx: &GenerationContext<'_>,
    evaluator: &mut dyn Backend,
    selector: &mut dyn Backend,
    options: GenerateOptions,
) -> OracleResult {
    generate_oracle_with(ctx, evaluator, selector, options, &NoClock)
}

/// Runs the evaluator, then the selector loop until `;`.
///
/// An off-list selector reply is retried once with [`REMINDER`] appended;
/// a second off-list reply aborts. Backend errors, an empty candidate set,
/// and exceeded limits abort too. The trace holds accepted steps only.
pub fn generate_oracle_with(
    ctx: &GenerationContext<'_>,
    evaluator: &mut dyn Backend,
    selector: &mut dyn Backend,
    options: GenerateOptions,
    clock: &dyn Clock,
) -> OracleResult {
    match should_generate(ctx, evaluator) {
        Ok(true) => select_tokens(ctx, selector, options, clock),
        Ok(false) => OracleResult::declined(),
        Err(e) => OracleResult::aborted(Vec::new(), format!("evaluator: {e}")),
    }
}

/// [`generate_oracle_with`] with one backend answering both roles.
pub fn generate_oracle_using(
    ctx: &GenerationContext<'_>,
    backend: &mut dyn Backend,
    options: GenerateOptions,
    clock: &dyn Clock,
) -> OracleResult {
    match should_generate(ctx, backend) {
        Ok(true) => select_tokens(ctx, backend, options, clock),
        Ok(false) => OracleResult::declined(),
        Err(e) => OracleResult::aborted(Vec::new(), format!("evaluator: {e}")),
    }
}

fn select_tokens(
    ctx: &GenerationContext<'_>,
    selector: &mut dyn Backend,
    options: GenerateOptions,
    clock: &dyn Clock,
) -> OracleResult {
    let limits = options.limits;
    let engine = TokenEngine::new(ctx).with_max_tokens(limits.max_tokens);
    let mut partial = PartialOracle::new();
    let mut trace: Vec<TraceStep> = Vec::new();
    loop {
        if let Some(max) = limits.max_seconds {
            if clock.elapsed_seconds() > max {
                return OracleResult::aborted(trace, format!("time limit of {max}s exceeded"));
            }
        }
        if partial.len() >= limits.max_tokens {
            return OracleResult::aborted(trace, format!("token limit of {} reached", limits.max_tokens));
        }
        let set = match engine.candidates(&partial) {
            Ok(s) => s,
            Err(e) => return OracleResult::aborted(trace, format!("grammar: {e}")),
        };
        if set.is_empty() {
            return OracleResult::aborted(trace, format!("no candidates after {:?}", partial.rendered_text()));
        }
        let prompt = render_selector_prompt(&engine, &partial, &set, options.budget);
        let mut retried = false;
        let chosen = loop {
            let p = if retried { prompt.with_reminder() } else { prompt.clone() };
            let reply = match selector.select(&p) {
                Ok(r) => r,
                Err(e) => return OracleResult::aborted(trace, format!("selector: {e}")),
            };
            match set.get(&reply) {
                Some(c) => break c.token.clone(),
                None if !retried => retried = true,
                None => return OracleResult::aborted(trace, format!("selector chose {reply:?}, not a candidate")),
            }
        };
        trace.push(TraceStep {
            candidates: prompt.structured.candidates.clone(),
            chosen: chosen.text.clone(),
            retried,
            truncated: prompt.truncated(),
        });
        let done = chosen.is(";");
        partial.tokens.push(chosen);
        if done {
            break;
        }
    }
    let text = partial.rendered_text();
    let checked = canonicalize(&text).map_err(|e| e.to_string()).and_then(|canon| {
        engine.check_text(&canon).map(|_| canon).map_err(|e| e.to_string())
    });
    match checked {
        Ok(oracle_text) => OracleResult { status: OracleStatus::Generated, oracle_text, trace, diagnostic: None },
        Err(e) => OracleResult::aborted(trace, format!("generated oracle {text:?} failed checking: {e}")),
    }
}
