//! Evaluator and selector prompt rendering.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::engine::{CandidateSet, GenerationContext, OracleType, TokenEngine};
use crate::grammar::PartialOracle;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// The two answers the evaluator may give.
pub const EVALUATOR_ARMS: [&str; 2] = ["assertTrue(", "// No assertion possible"];

pub const FILL_MARKER: &str = "<FILL_ME>";

pub const REMINDER: &str = "// Choose the next token from the list of next possible tokens.";

/// Limits on the selector prompt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct PromptBudget {
    /// Lines of additional context kept.
    pub context_lines: usize,
    /// Characters of the whole prompt.
    pub max_chars: usize,
}

impl Default for PromptBudget {
    fn default() -> Self {
        PromptBudget { context_lines: 64, max_chars: 8_000 }
    }
}

/// Everything a prompt is rendered from.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct PromptFields {
    pub oracle_type: OracleType,
    pub tag_text: String,
    pub candidates: Vec<String>,
    /// `None` for the evaluator prompt.
    pub partial_text: Option<String>,
    pub method_doc: String,
    pub method_source: String,
    pub parameter_names: Vec<String>,
    pub context_snippets: Vec<String>,
    /// Context lines dropped to fit the budget.
    pub dropped_context: usize,
    /// Character count the whole prompt was cut to.
    pub cut_at: Option<usize>,
    pub reminder: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct PromptBundle {
    pub rendered_text: String,
    pub structured: PromptFields,
}

impl PromptBundle {
    pub fn from_fields(structured: PromptFields) -> PromptBundle {
        PromptBundle { rendered_text: render_fields(&structured), structured }
    }

    pub fn is_evaluator(&self) -> bool {
        self.structured.partial_text.is_none()
    }

    pub fn truncated(&self) -> bool {
        self.structured.dropped_context > 0 || self.structured.cut_at.is_some()
    }

    /// The same prompt with the choose-from-the-list reminder appended.
    pub fn with_reminder(&self) -> PromptBundle {
        let mut f = self.structured.clone();
        f.reminder = true;
        PromptBundle::from_fields(f)
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from("'");
    for c in s.chars() {
        if c == '\'' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('\'');
    out
}

fn token_list(tokens: &[String]) -> String {
    let items: Vec<String> = tokens.iter().map(|t| quote(t)).collect();
    format!("[{}]", items.join(", "))
}

fn render_fields(f: &PromptFields) -> String {
    let mut out = format!("// {}: \"{}\"\n", f.oracle_type.display_name(), f.tag_text);
    out.push_str(&format!("// Next possible tokens: {}\n", token_list(&f.candidates)));
    out.push_str("// Assertion:\n");
    match &f.partial_text {
        Some(p) => out.push_str(&format!("assertTrue({p}{FILL_MARKER}\n")),
        None => out.push_str(&format!("{FILL_MARKER}\n")),
    }
    out.push_str("\n// Method under test:\n");
    if !f.method_doc.is_empty() {
        out.push_str(&f.method_doc);
        out.push('\n');
    }
    out.push_str(&f.method_source);
    out.push('\n');
    if f.partial_text.is_some() {
        out.push_str("\n// Additional context:\n");
        for line in &f.context_snippets {
            out.push_str(line);
            out.push('\n');
        }
    }
    if f.reminder {
        out.push('\n');
        out.push_str(REMINDER);
        out.push('\n');
    }
    match f.cut_at {
        Some(n) => cut_chars(&out, n).to_string(),
        None => out,
    }
}

fn cut_chars(s: &str, max: usize) -> &str {
    match s.char_indices().nth(max) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

fn base_fields(ctx: &GenerationContext<'_>) -> PromptFields {
    PromptFields {
        oracle_type: ctx.oracle_type,
        tag_text: ctx.tag_text(),
        candidates: Vec::new(),
        partial_text: None,
        method_doc: ctx.unit.doc_text.clone(),
        method_source: ctx.unit.source_text.clone(),
        parameter_names: ctx.unit.parameters.iter().map(|p| p.name.clone()).collect(),
        context_snippets: Vec::new(),
        dropped_context: 0,
        cut_at: None,
        reminder: false,
    }
}

pub fn render_evaluator_prompt(ctx: &GenerationContext<'_>) -> PromptBundle {
    let mut f = base_fields(ctx);
    f.candidates = EVALUATOR_ARMS.iter().map(|s| s.to_string()).collect();
    PromptBundle::from_fields(f)
}

pub fn render_selector_prompt(
    engine: &TokenEngine<'_, '_>,
    partial: &PartialOracle,
    candidates: &CandidateSet,
    budget: PromptBudget,
) -> PromptBundle {
    let mut f = base_fields(engine.context());
    f.candidates = candidates.texts().into_iter().map(String::from).collect();
    f.partial_text = Some(partial.rendered_text());
    let mut lines = engine.declarations(partial, candidates);
    if lines.len() > budget.context_lines {
        f.dropped_context = lines.len() - budget.context_lines;
        lines.truncate(budget.context_lines);
    }
    f.context_snippets = lines;
    loop {
        let text = render_fields(&f);
        if text.chars().count() <= budget.max_chars {
            return PromptBundle { rendered_text: text, structured: f };
        }
        if f.context_snippets.pop().is_some() {
            f.dropped_context += 1;
            continue;
        }
        f.cut_at = Some(budget.max_chars);
        return PromptBundle::from_fields(f);
    }
}
