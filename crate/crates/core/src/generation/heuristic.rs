//! A small rule-based backend, useful as a baseline and for smoke runs.
//!
//! Rules, tried in order against the words of the tag text:
//!
//! 1. `null` together with `not`, `never`, `must not`, or `non-null`: the
//!    target must not be null. Preconditions and normal postconditions
//!    assert `<target> != null`; exceptional postconditions assert
//!    `<target> == null`.
//! 2. `(zero based)`, `zero-based`, `non-negative`, `never negative`,
//!    `not be negative`, or `0 or more`: the target is non-negative.
//!    Preconditions and normal postconditions assert `<target> >= 0`;
//!    exceptional postconditions assert `(<target> >= 0) == false`.
//! 3. Exceptional postconditions only: `null` alone asserts
//!    `<target> == null`, `is negative` asserts `<target> < 0`.
//!
//! Anything else is declined. The target is `methodResultID` for `@return`
//! tags, the named parameter for `@param` tags, and for `@throws` tags the
//! first parameter mentioned in the text, or the only parameter when the
//! text speaks of "the parameter" or of null being "passed". With
//! [`HeuristicOptions::except_style`] preconditions are answered in the
//! exceptional form.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::backend::{Backend, BackendError};
use super::prompt::{PromptBundle, PromptFields, EVALUATOR_ARMS};
use crate::engine::OracleType;
use crate::grammar::tokenize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct HeuristicOptions {
    pub except_style: bool,
}

#[derive(Clone, Debug, Default)]
pub struct HeuristicBackend {
    options: HeuristicOptions,
}

impl HeuristicBackend {
    pub fn new(options: HeuristicOptions) -> HeuristicBackend {
        HeuristicBackend { options }
    }

    /// The oracle the rules produce for a prompt, if any.
    pub fn plan(&self, f: &PromptFields) -> Option<String> {
        heuristic_oracle(f, self.options)
    }
}

fn words(text: &str) -> Vec<String> {
    text.split(|c: char| !(c.is_alphanumeric() || c == '_' || c == '-'))
        .filter(|w| !w.is_empty())
        .map(|w| w.to_ascii_lowercase())
        .collect()
}

fn has_seq(words: &[String], seq: &[&str]) -> bool {
    words.windows(seq.len()).any(|w| w.iter().zip(seq).all(|(a, b)| a == b))
}

enum Rule {
    NotNull,
    NonNegative,
    Null,
    Negative,
}

fn rule(w: &[String], oracle_type: OracleType) -> Option<Rule> {
    let has = |s: &str| w.iter().any(|x| x == s);
    if has("null") && (has("not") || has("never")) || has("non-null") {
        return Some(Rule::NotNull);
    }
    if has_seq(w, &["zero", "based"])
        || has("zero-based")
        || has("non-negative")
        || has_seq(w, &["never", "negative"])
        || has_seq(w, &["not", "be", "negative"])
        || has_seq(w, &["0", "or", "more"])
    {
        return Some(Rule::NonNegative);
    }
    if oracle_type == OracleType::ExceptPost {
        if has("null") {
            return Some(Rule::Null);
        }
        if has_seq(w, &["is", "negative"]) {
            return Some(Rule::Negative);
        }
    }
    None
}

fn target(f: &PromptFields, tag_words: &[&str], text_words: &[String]) -> Option<String> {
    match tag_words.first().copied() {
        Some("@return") => Some("methodResultID".to_string()),
        Some("@param") => tag_words.get(1).filter(|t| f.parameter_names.iter().any(|p| p == *t)).map(|t| t.to_string()),
        Some("@throws") | Some("@exception") => {
            let lower: Vec<String> = f.parameter_names.iter().map(|p| p.to_ascii_lowercase()).collect();
            if let Some(i) = lower.iter().position(|p| text_words.iter().any(|w| w == p)) {
                return Some(f.parameter_names[i].clone());
            }
            let generic = text_words.iter().any(|w| w == "parameter" || w == "passed");
            (generic && f.parameter_names.len() == 1).then(|| f.parameter_names[0].clone())
        }
        _ => None,
    }
}

pub(crate) fn heuristic_oracle(f: &PromptFields, options: HeuristicOptions) -> Option<String> {
    let tag_words: Vec<&str> = f.tag_text.split_whitespace().collect();
    let body = tag_words.iter().skip(if tag_words.first() == Some(&"@return") { 1 } else { 2 }).copied();
    let body: Vec<&str> = body.collect();
    let text_words = words(&body.join(" "));
    let r = rule(&text_words, f.oracle_type)?;
    let t = target(f, &tag_words, &text_words)?;
    let except = f.oracle_type == OracleType::ExceptPost || options.except_style && f.oracle_type == OracleType::Pre;
    if t == "methodResultID" && except {
        return None;
    }
    Some(match (r, except) {
        (Rule::NotNull, false) => format!("{t} != null;"),
        (Rule::NotNull, true) | (Rule::Null, _) => format!("{t} == null;"),
        (Rule::NonNegative, false) => format!("{t} >= 0;"),
        (Rule::NonNegative, true) => format!("({t} >= 0) == false;"),
        (Rule::Negative, _) => format!("{t} < 0;"),
    })
}

impl Backend for HeuristicBackend {
    fn evaluate(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        let arm = if self.plan(&prompt.structured).is_some() { EVALUATOR_ARMS[0] } else { EVALUATOR_ARMS[1] };
        Ok(arm.to_string())
    }

    fn select(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        let f = &prompt.structured;
        let plan = self.plan(f).and_then(|o| tokenize(&o).ok()).unwrap_or_default();
        let done = f.partial_text.as_deref().map_or(0, |p| tokenize(p).map_or(0, |t| t.len()));
        plan.get(done).map(|t| t.text.clone()).ok_or(BackendError::Exhausted(done))
    }
}
