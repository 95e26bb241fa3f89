//! Injecting oracles into existing test sources as assertions around calls
//! to the method under test.
//!
//! Injected code sits between marker comments:
//!
//! ```text
//! // oraclegen:begin PRE setSeriesItemLabelGenerator(int, CategoryItemLabelGenerator): series >= 0;
//! assertTrue(s >= 0);
//! // oraclegen:end
//! ```
//!
//! Preconditions go before the calling statement, normal postconditions
//! after it. A postcondition that reads `methodResultID` on a call whose
//! value is discarded gets the value captured first, by inserting
//! `var __tr_result = ` in front of the statement (`__tr_result2`, ... when
//! the name is taken). Exceptional postconditions become a guard before the
//! statement:
//!
//! ```text
//! if (<condition>) {
//!     try {
//!         <call>;
//!         fail("expected <Exception>");
//!     } catch (<Exception> __tr_expected) {
//!     }
//! }
//! ```
//!
//! Existing text is never removed or moved. Applying a plan to a file that
//! already holds its begin marker changes nothing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::engine::{GenerationContext, OracleType};
use crate::grammar::{canonicalize, render_tokens, tokenize, OracleSyntaxError, Token, TokenKind};
use crate::model::java::{parse_compilation_unit, tokenize_java, JavaSyntaxError, JavaToken, JavaTokenKind};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

pub const BEGIN_MARKER: &str = "// oraclegen:begin";
pub const END_MARKER: &str = "// oraclegen:end";
pub const RESULT_LOCAL: &str = "__tr_result";
const EXPECTED_LOCAL: &str = "__tr_expected";

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AugmentError {
    #[error("test source: {0}")]
    Java(#[from] JavaSyntaxError),
    #[error(transparent)]
    Oracle(#[from] OracleSyntaxError),
    #[error("injected source no longer parses: {0}")]
    Unparseable(JavaSyntaxError),
}

/// How the calling statement uses the call's value.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub enum ResultUse {
    /// `call;`
    Discarded,
    /// `T x = call;` or `x = call;`
    Stored(String),
    /// Anything else: an argument, a condition, a `return`, ...
    Nested,
}

/// A direct invocation of the method under test.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct CallSite {
    /// 1-based.
    pub line: usize,
    /// 1-based, in bytes.
    pub column: usize,
    pub receiver: Option<String>,
    pub arguments: Vec<String>,
    /// `receiver.name(args)` or `new Name(args)`.
    pub call_text: String,
    pub result: ResultUse,
    /// Byte range of the enclosing statement, `;` included.
    pub statement: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct PlannedSite {
    pub call: CallSite,
    /// Oracle symbol to source text.
    pub binding: BTreeMap<String, String>,
    /// Local introduced to capture the result.
    pub capture: Option<String>,
    /// The substituted oracle, without `;`.
    pub condition: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct InjectionPlan {
    pub test_file: String,
    pub method_key: String,
    pub oracle_type: OracleType,
    pub oracle: String,
    pub exception: Option<String>,
    pub sites: Vec<PlannedSite>,
    pub diagnostics: Vec<String>,
}

impl InjectionPlan {
    pub fn marker(&self) -> String {
        format!("{BEGIN_MARKER} {} {}: {}", self.oracle_type, self.method_key, self.oracle)
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }
}

fn matching(toks: &[JavaToken<'_>], open: usize) -> Option<usize> {
    let (o, c) = match toks[open].text {
        "(" => ("(", ")"),
        "[" => ("[", "]"),
        "{" => ("{", "}"),
        _ => return None,
    };
    let mut depth = 0usize;
    for (i, t) in toks.iter().enumerate().skip(open) {
        if t.is(o) {
            depth += 1;
        } else if t.is(c) {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

fn matching_back(toks: &[JavaToken<'_>], close: usize) -> Option<usize> {
    let (o, c) = match toks[close].text {
        ")" => ("(", ")"),
        "]" => ("[", "]"),
        _ => return None,
    };
    let mut depth = 0usize;
    for i in (0..=close).rev() {
        if toks[i].is(c) {
            depth += 1;
        } else if toks[i].is(o) {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

/// Start of the receiver chain ending at token `end` (inclusive).
fn chain_start(toks: &[JavaToken<'_>], end: usize) -> usize {
    let mut i = end;
    loop {
        if toks[i].is(")") || toks[i].is("]") {
            match matching_back(toks, i) {
                Some(o) if o > 0 && (toks[o - 1].is_ident() || toks[o].is("[")) => i = o - 1,
                Some(o) => return o,
                None => return i,
            }
            continue;
        }
        if i >= 2 && toks[i - 1].is(".") && (toks[i - 2].is_ident() || toks[i - 2].is(")") || toks[i - 2].is("]")) {
            i -= 2;
            continue;
        }
        if i >= 1 && toks[i - 1].is("new") && toks[i].is_ident() {
            return i - 1;
        }
        return i;
    }
}

const STATEMENT_WORDS: [&str; 6] = ["return", "throw", "else", "case", "assert", "yield"];

fn marker_regions(src: &str) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut from = 0;
    while let Some(b) = src[from..].find(BEGIN_MARKER) {
        let b = from + b;
        let e = src[b..].find(END_MARKER).map_or(src.len(), |e| b + e);
        out.push((b, e));
        from = e.max(b + 1);
    }
    out
}

/// Direct calls of `name` with `arity` arguments; constructors match
/// `new Name(...)`.
pub fn find_call_sites(src: &str, name: &str, arity: usize, constructor: bool) -> Result<Vec<CallSite>, AugmentError> {
    let toks = tokenize_java(src)?;
    let skip = marker_regions(src);
    let mut out = Vec::new();
    for i in 0..toks.len().saturating_sub(1) {
        if !(toks[i].is_ident() && toks[i].text == name && toks[i + 1].is("(")) {
            continue;
        }
        if skip.iter().any(|&(b, e)| toks[i].start >= b && toks[i].start < e) {
            continue;
        }
        let prev = i.checked_sub(1).map(|p| &toks[p]);
        let qualified = prev.is_some_and(|p| p.is("."));
        let is_new = prev.is_some_and(|p| p.is("new"));
        if constructor != is_new {
            continue;
        }
        if !qualified && !is_new {
            let ok = match prev {
                None => false,
                Some(p) if p.kind == JavaTokenKind::Punct => !p.is(">") && !p.is("]"),
                Some(p) => p.is_ident() && STATEMENT_WORDS.contains(&p.text),
            };
            if !ok {
                continue;
            }
        }
        let Some(close) = matching(&toks, i + 1) else { continue };
        let arguments = split_args(src, &toks, i + 1, close);
        if arguments.len() != arity {
            continue;
        }
        let start = if qualified { chain_start(&toks, i - 2) } else if is_new { i - 1 } else { i };
        let receiver = qualified.then(|| src[toks[start].start..toks[i - 1].start].trim().to_string());
        let call_text = src[toks[start].start..toks[close].end].to_string();
        let Some((stmt_start, stmt_end)) = statement_of(&toks, start, close) else { continue };
        let result = result_use(&toks, stmt_start, start, close, stmt_end);
        let (line, column) = line_col(src, toks[start].start);
        out.push(CallSite {
            line,
            column,
            receiver,
            arguments,
            call_text,
            result,
            statement: (toks[stmt_start].start, toks[stmt_end].end),
        });
    }
    Ok(out)
}

fn line_col(src: &str, at: usize) -> (usize, usize) {
    let before = &src[..at];
    let line = before.matches('\n').count() + 1;
    let col = at - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

fn split_args(src: &str, toks: &[JavaToken<'_>], open: usize, close: usize) -> Vec<String> {
    if close == open + 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut from = open + 1;
    for j in open + 1..close {
        let t = &toks[j];
        if t.is("(") || t.is("[") || t.is("{") {
            depth += 1;
        } else if t.is(")") || t.is("]") || t.is("}") {
            depth -= 1;
        } else if t.is(",") && depth == 0 {
            out.push(src[toks[from].start..toks[j - 1].end].to_string());
            from = j + 1;
        }
    }
    out.push(src[toks[from].start..toks[close - 1].end].to_string());
    out
}

/// Token range of the statement holding tokens `first..=last`: from after
/// the previous `;`, `{`, or `}` to the next `;`, or to the `{` opening the
/// body of an `if`, `while`, ... header.
fn statement_of(toks: &[JavaToken<'_>], first: usize, last: usize) -> Option<(usize, usize)> {
    let mut depth = 0i32;
    let mut s = first;
    while s > 0 {
        let t = &toks[s - 1];
        if t.is(")") || t.is("]") {
            depth += 1;
        } else if t.is("(") || t.is("[") {
            depth = (depth - 1).max(0);
        } else if depth == 0 && (t.is(";") || t.is("{") || t.is("}")) {
            break;
        }
        s -= 1;
    }
    let mut depth = 0i32;
    for (e, t) in toks.iter().enumerate().skip(last + 1) {
        if t.is("(") || t.is("[") {
            depth += 1;
        } else if t.is(")") || t.is("]") {
            depth = (depth - 1).max(0);
        } else if depth == 0 && (t.is(";") || t.is("{")) {
            return Some((s, e));
        } else if t.is("{") || t.is("}") {
            return None;
        }
    }
    None
}

fn result_use(toks: &[JavaToken<'_>], stmt: usize, start: usize, close: usize, end: usize) -> ResultUse {
    if close + 1 != end || !toks[end].is(";") {
        return ResultUse::Nested;
    }
    let head = &toks[stmt..start];
    if head.is_empty() {
        return ResultUse::Discarded;
    }
    let n = head.len();
    let simple = head[..n - 1].iter().all(|t| t.is_ident() || t.is("<") || t.is(">") || t.is("[") || t.is("]") || t.is(",") || t.is("."));
    if n >= 2 && head[n - 1].is("=") && head[n - 2].is_ident() && simple && !STATEMENT_WORDS.contains(&head[0].text) {
        return ResultUse::Stored(head[n - 2].text.to_string());
    }
    ResultUse::Nested
}

fn is_simple_java(text: &str) -> bool {
    let t = text.trim();
    !t.is_empty()
        && (t.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '$' || c == '.')
            || t.starts_with('"') && t.ends_with('"') && t.len() >= 2 && !t[1..t.len() - 1].contains('"'))
}

fn fresh_local(used: &BTreeSet<String>) -> String {
    if !used.contains(RESULT_LOCAL) {
        return RESULT_LOCAL.to_string();
    }
    (2..).map(|n| format!("{RESULT_LOCAL}{n}")).find(|c| !used.contains(c)).expect("unbounded")
}

/// Finds the calls of `ctx`'s method in `test_source` and binds `oracle`'s
/// symbols at each of them. Sites that cannot be bound are left out with a
/// diagnostic.
pub fn plan_injection(
    ctx: &GenerationContext<'_>,
    test_file: &str,
    test_source: &str,
    oracle: &str,
) -> Result<InjectionPlan, AugmentError> {
    parse_compilation_unit(test_source)?;
    let oracle = canonicalize(oracle)?;
    let unit = ctx.unit;
    let name = if unit.is_constructor { ctx.class.name.as_str() } else { unit.name.as_str() };
    let calls = find_call_sites(test_source, name, unit.arity(), unit.is_constructor)?;
    let tokens = tokenize(&oracle).map_err(OracleSyntaxError::from)?;
    let uses_result = tokens.iter().any(|t| t.is("methodResultID"));
    let uses_this = tokens.iter().any(|t| t.is("this"));
    let mut used: BTreeSet<String> =
        tokenize_java(test_source)?.iter().filter(|t| t.is_ident()).map(|t| t.text.to_string()).collect();
    let mut plan = InjectionPlan {
        test_file: test_file.to_string(),
        method_key: unit.erased_key(),
        oracle_type: ctx.oracle_type,
        oracle: oracle.clone(),
        exception: ctx.exception_type.clone(),
        sites: Vec::new(),
        diagnostics: Vec::new(),
    };
    for call in calls {
        let at = format!("{test_file}:{}:{}", call.line, call.column);
        let mut binding = BTreeMap::new();
        for (p, a) in unit.parameters.iter().zip(&call.arguments) {
            let a = a.trim();
            binding.insert(p.name.clone(), if is_simple_java(a) { a.to_string() } else { format!("({a})") });
        }
        let is_post = ctx.oracle_type == OracleType::NormalPost;
        let mut capture = None;
        let result_name = match &call.result {
            ResultUse::Stored(v) => Some(v.clone()),
            ResultUse::Discarded if is_post && (uses_result || unit.is_constructor && uses_this) => {
                let c = fresh_local(&used);
                used.insert(c.clone());
                capture = Some(c.clone());
                Some(c)
            }
            _ => None,
        };
        if uses_result {
            match (&result_name, is_post) {
                (Some(r), true) => {
                    binding.insert("methodResultID".into(), r.clone());
                }
                _ => {
                    plan.diagnostics.push(format!("{at}: methodResultID cannot be bound here"));
                    continue;
                }
            }
        }
        if !unit.is_static && uses_this {
            let this = if unit.is_constructor { result_name.clone().filter(|_| is_post) } else { call.receiver.clone() };
            match this {
                Some(t) => {
                    binding.insert("this".into(), if is_simple_java(&t) { t } else { format!("({t})") });
                }
                None => {
                    plan.diagnostics.push(format!("{at}: `this` cannot be bound here"));
                    continue;
                }
            }
        }
        if is_post && call.result == ResultUse::Nested {
            let first = test_source[call.statement.0..].split_whitespace().next().unwrap_or("");
            if STATEMENT_WORDS.contains(&first) || test_source[..call.statement.1].ends_with('{') {
                plan.diagnostics.push(format!("{at}: no statement follows the call"));
                continue;
            }
        }
        match substitute(ctx, &tokens, &binding) {
            Ok(condition) => plan.sites.push(PlannedSite { call, binding, capture, condition }),
            Err(sym) => plan.diagnostics.push(format!("{at}: no binding for `{sym}`")),
        }
    }
    Ok(plan)
}

fn substitute(ctx: &GenerationContext<'_>, tokens: &[Token], binding: &BTreeMap<String, String>) -> Result<String, String> {
    let mut out: Vec<Token> = Vec::with_capacity(tokens.len());
    for (i, t) in tokens.iter().enumerate() {
        let after_dot = i > 0 && tokens[i - 1].is(".");
        let symbol = !after_dot && (t.kind == TokenKind::Identifier || t.is("this") || t.is("methodResultID"));
        if symbol {
            if let Some(b) = binding.get(&t.text) {
                out.push(Token::new(b.clone(), TokenKind::Identifier));
                continue;
            }
            if t.kind != TokenKind::Identifier || ctx.model.find_class(&t.text).is_none() {
                return Err(t.text.clone());
            }
        }
        out.push(t.clone());
    }
    if out.last().is_some_and(|t| t.is(";")) {
        out.pop();
    }
    Ok(render_tokens(&out))
}

fn line_start(src: &str, at: usize) -> usize {
    src[..at].rfind('\n').map_or(0, |i| i + 1)
}

fn indent_of(src: &str, at: usize) -> &str {
    let s = line_start(src, at);
    let line = &src[s..];
    &line[..line.len() - line.trim_start().len()]
}

/// Applies `plan` to `source`, the text it was planned on.
pub fn apply_injection(source: &str, plan: &InjectionPlan) -> Result<String, AugmentError> {
    let marker = plan.marker();
    if plan.sites.is_empty() || source.lines().any(|l| l.trim() == marker) {
        return Ok(source.to_string());
    }
    let mut edits: Vec<(usize, String)> = Vec::new();
    for site in &plan.sites {
        let (s, e) = site.call.statement;
        let indent = indent_of(source, s);
        let own_line = source[line_start(source, s)..s].trim().is_empty();
        let block = |body: &[String]| {
            let mut text = format!("{indent}{marker}\n");
            for l in body {
                text.push_str(indent);
                text.push_str(l);
                text.push('\n');
            }
            text.push_str(&format!("{indent}{END_MARKER}\n"));
            text
        };
        let before = |text: String| if own_line { (line_start(source, s), text) } else { (s, format!("\n{text}{indent}")) };
        match plan.oracle_type {
            OracleType::Pre => edits.push(before(block(&[format!("assertTrue({});", site.condition)]))),
            OracleType::NormalPost => {
                if let Some(c) = &site.capture {
                    edits.push((s, format!("var {c} = ")));
                }
                let nl = source[e..].find('\n').map_or(source.len(), |i| e + i + 1);
                let mut text = block(&[format!("assertTrue({});", site.condition)]);
                if nl == source.len() && !source.ends_with('\n') {
                    text.insert(0, '\n');
                }
                edits.push((nl, text));
            }
            OracleType::ExceptPost => {
                let ex = plan.exception.clone().unwrap_or_else(|| "Exception".to_string());
                let body = [
                    format!("if ({}) {{", site.condition),
                    "    try {".to_string(),
                    format!("        {};", site.call.call_text),
                    format!("        fail(\"expected {ex}\");"),
                    format!("    }} catch ({ex} {EXPECTED_LOCAL}) {{"),
                    "    }".to_string(),
                    "}".to_string(),
                ];
                edits.push(before(block(&body)));
            }
        }
    }
    edits.sort_by_key(|e| core::cmp::Reverse(e.0));
    let mut out = source.to_string();
    for (at, text) in edits {
        out.insert_str(at, &text);
    }
    parse_compilation_unit(&out).map_err(AugmentError::Unparseable)?;
    Ok(out)
}
