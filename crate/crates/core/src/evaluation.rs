//! Normalizing oracles, classifying generated against expected oracles,
//! and accuracy/precision/recall/F1 reporting.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use num_rational::Ratio;

use crate::engine::{ContextError, GenerationContext, OracleType};
use crate::generation::{generate_oracle_using, Backend, Clock, GenerateOptions, OracleStatus};
use crate::grammar::ast::{Arith, Atom, Conjunction, Operand, Prop, Step};
use crate::grammar::{parse_text, render, OracleAst, OracleSyntaxError};
use crate::model::ProjectModel;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Canonical text of an oracle, with the literal side of `==`/`!=` moved to
/// the right when exactly one side is a literal. `None` stays `None`.
pub fn normalize(text: Option<&str>) -> Result<Option<String>, OracleSyntaxError> {
    let Some(text) = text else { return Ok(None) };
    let ast = match parse_text(text)? {
        OracleAst::Plain(p) => OracleAst::Plain(flip_prop(p)),
        OracleAst::Guarded { cond, then, otherwise } => {
            OracleAst::Guarded { cond: flip_prop(cond), then: flip_prop(then), otherwise: flip_prop(otherwise) }
        }
    };
    Ok(Some(render(&ast)))
}

fn flip_prop(p: Prop) -> Prop {
    Prop {
        disjuncts: p
            .disjuncts
            .into_iter()
            .map(|c| Conjunction { atoms: c.atoms.into_iter().map(flip_atom).collect() })
            .collect(),
    }
}

fn flip_operand(o: Operand) -> Operand {
    match o {
        Operand::Paren(p) => Operand::Paren(alloc::boxed::Box::new(flip_prop(*p))),
        Operand::Chain(mut c) => {
            for s in &mut c.steps {
                if let Step::Quantifier { body, .. } = s {
                    let b = core::mem::replace(&mut **body, Prop { disjuncts: Vec::new() });
                    **body = flip_prop(b);
                }
            }
            Operand::Chain(c)
        }
        lit => lit,
    }
}

fn flip_atom(a: Atom) -> Atom {
    match a {
        Atom::Compare { left, op, right } => {
            let left = flip_operand(left);
            let mut right = right;
            right.first.first = flip_operand(right.first.first);
            let swap = op.is_equality()
                && matches!(left, Operand::Literal(_))
                && right.as_single().is_some_and(|r| !matches!(r, Operand::Literal(_)));
            if swap {
                let r = right.first.first;
                Atom::Compare { left: r, op, right: Arith::single(left) }
            } else {
                Atom::Compare { left, op, right }
            }
        }
        Atom::InstanceOf { operand, class } => Atom::InstanceOf { operand: flip_operand(operand), class },
        Atom::Operand(o) => Atom::Operand(flip_operand(o)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum Klass {
    TP,
    TN,
    FP,
    FN,
}

impl Klass {
    pub fn as_str(self) -> &'static str {
        match self {
            Klass::TP => "TP",
            Klass::TN => "TN",
            Klass::FP => "FP",
            Klass::FN => "FN",
        }
    }
}

impl fmt::Display for Klass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Class of a normalized (expected, generated) pair. A wrong oracle is a
/// false positive.
pub fn classify(expected: Option<&str>, generated: Option<&str>) -> Klass {
    match (expected, generated) {
        (Some(e), Some(g)) if e == g => Klass::TP,
        (Some(_), Some(_)) => Klass::FP,
        (None, None) => Klass::TN,
        (None, Some(_)) => Klass::FP,
        (Some(_), None) => Klass::FN,
    }
}

/// Whether a wrong oracle also counts as a false negative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum MetricsMode {
    #[default]
    Default,
    Strict,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct Counts {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    pub fn_: u64,
}

impl Counts {
    pub fn new(tp: u64, tn: u64, fp: u64, fn_: u64) -> Counts {
        Counts { tp, tn, fp, fn_ }
    }

    pub fn add(&mut self, k: Klass) {
        match k {
            Klass::TP => self.tp += 1,
            Klass::TN => self.tn += 1,
            Klass::FP => self.fp += 1,
            Klass::FN => self.fn_ += 1,
        }
    }

    pub fn add_outcome(&mut self, expected: Option<&str>, generated: Option<&str>, mode: MetricsMode) {
        let k = classify(expected, generated);
        self.add(k);
        if mode == MetricsMode::Strict && k == Klass::FP && expected.is_some() {
            self.fn_ += 1;
        }
    }

    pub fn merge(&mut self, o: &Counts) {
        self.tp += o.tp;
        self.tn += o.tn;
        self.fp += o.fp;
        self.fn_ += o.fn_;
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }

    pub fn metrics(&self) -> Metrics {
        let ratio = |n: u64, d: u64| (d != 0).then(|| Ratio::new(n, d));
        let precision = ratio(self.tp, self.tp + self.fp);
        let recall = ratio(self.tp, self.tp + self.fn_);
        let f1 = match (precision, recall) {
            (Some(_), Some(_)) => ratio(2 * self.tp, 2 * self.tp + self.fp + self.fn_),
            _ => None,
        };
        Metrics { accuracy: ratio(self.tp + self.tn, self.total()), precision, recall, f1 }
    }
}

/// Exact metric values; `None` when a denominator is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metrics {
    pub accuracy: Option<Ratio<u64>>,
    pub precision: Option<Ratio<u64>>,
    pub recall: Option<Ratio<u64>>,
    pub f1: Option<Ratio<u64>>,
}

/// Integer percent, rounding halves up.
pub fn percent(r: Ratio<u64>) -> u64 {
    (200 * r.numer() + r.denom()) / (2 * r.denom())
}

/// `73%`, or `N/A`.
pub fn format_percent(r: Option<Ratio<u64>>) -> String {
    match r {
        Some(r) => format!("{}%", percent(r)),
        None => "N/A".to_string(),
    }
}

impl Metrics {
    pub fn percents(&self) -> [Option<u64>; 4] {
        [self.accuracy, self.precision, self.recall, self.f1].map(|m| m.map(percent))
    }
}

/// One ground-truth oracle, or `None` for a tag with no oracle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct GroundTruthEntry {
    pub project_name: String,
    pub class_name: String,
    pub method_signature: String,
    pub oracle_type: OracleType,
    pub tag_text: String,
    pub expected_oracle: Option<String>,
}

impl GroundTruthEntry {
    pub fn context<'m>(&self, model: &'m ProjectModel) -> Result<GenerationContext<'m>, ContextError> {
        GenerationContext::lookup(model, &self.class_name, &self.method_signature, self.oracle_type, &self.tag_text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct Outcome {
    pub entry: GroundTruthEntry,
    pub generated: Option<String>,
    pub klass: Klass,
    pub status: OracleStatus,
    pub diagnostic: Option<String>,
}

/// Counts per project and in total.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetricsReport {
    pub mode: MetricsMode,
    pub projects: BTreeMap<String, Counts>,
    pub total: Counts,
}

pub fn compute_metrics(outcomes: &[Outcome], mode: MetricsMode) -> MetricsReport {
    let mut r = MetricsReport { mode, ..MetricsReport::default() };
    for o in outcomes {
        let mut c = Counts::default();
        c.add_outcome(o.entry.expected_oracle.as_deref(), o.generated.as_deref(), mode);
        r.projects.entry(o.entry.project_name.clone()).or_default().merge(&c);
        r.total.merge(&c);
    }
    r
}

fn table_row(out: &mut String, name: &str, c: &Counts) {
    let m = c.metrics();
    out.push_str(&format!(
        "{:<32} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5}\n",
        name,
        c.tp,
        c.tn,
        c.fp,
        c.fn_,
        format_percent(m.accuracy),
        format_percent(m.precision),
        format_percent(m.recall),
        format_percent(m.f1)
    ));
}

impl MetricsReport {
    /// One row per project and a `Total` row.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<32} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5}\n",
            "project", "TP", "TN", "FP", "FN", "A", "P", "R", "F1"
        );
        for (name, c) in &self.projects {
            table_row(&mut out, name, c);
        }
        table_row(&mut out, "Total", &self.total);
        out
    }
}

/// Wrong oracles: generated and expected both present but different.
pub fn near_misses(outcomes: &[Outcome]) -> Vec<&Outcome> {
    outcomes.iter().filter(|o| o.klass == Klass::FP && o.entry.expected_oracle.is_some()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvaluationError {
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error("expected oracle {0:?} does not parse: {1}")]
    Expected(String, OracleSyntaxError),
}

/// Generates the oracle for one entry and classifies it.
pub fn evaluate_entry(
    model: &ProjectModel,
    entry: &GroundTruthEntry,
    backend: &mut dyn Backend,
    options: GenerateOptions,
    clock: &dyn Clock,
) -> Result<Outcome, EvaluationError> {
    let ctx = entry.context(model)?;
    let expected =
        normalize(entry.expected_oracle.as_deref()).map_err(|e| EvaluationError::Expected(entry.expected_oracle.clone().unwrap_or_default(), e))?;
    let result = generate_oracle_using(&ctx, backend, options, clock);
    let (generated, diagnostic) = match result.status {
        OracleStatus::Generated => match normalize(Some(&result.oracle_text)) {
            Ok(g) => (g, None),
            Err(e) => (None, Some(format!("generated oracle does not parse: {e}"))),
        },
        _ => (None, result.diagnostic),
    };
    let klass = classify(expected.as_deref(), generated.as_deref());
    let mut entry = entry.clone();
    entry.expected_oracle = expected;
    Ok(Outcome { entry, generated, klass, status: result.status, diagnostic })
}

/// Entries evaluated in order; unresolvable entries are returned apart.
pub fn run_evaluation<'b>(
    model: &ProjectModel,
    entries: &[GroundTruthEntry],
    mut backend_for: impl FnMut(&GroundTruthEntry) -> alloc::boxed::Box<dyn Backend + 'b>,
    options: GenerateOptions,
    clock: &dyn Clock,
) -> (Vec<Outcome>, Vec<(usize, EvaluationError)>) {
    let mut outcomes = Vec::new();
    let mut skipped = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let mut b = backend_for(e);
        match evaluate_entry(model, e, &mut *b, options, clock) {
            Ok(o) => outcomes.push(o),
            Err(err) => skipped.push((i, err)),
        }
    }
    (outcomes, skipped)
}
