//! The pipeline commands. Each writes its outputs and a `run.json` manifest
//! under the output directory and reports warnings; fatal problems are
//! errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use oraclegen_core::augmentation::{apply_injection, plan_injection};
use oraclegen_core::dataset::{disaggregate, OracleSample, TokenSample, SCHEMA_VERSION};
use oraclegen_core::evaluation::{
    compute_metrics, evaluate_entry, format_percent, near_misses, Counts, MetricsMode, Outcome, Ratio,
};
use oraclegen_core::generation::{generate_oracle_using, GenerateOptions, OracleResult, OracleStatus, TraceStep};
use oraclegen_core::ProjectModel;
use serde::Serialize;
use serde_json::{json, Value};
use walkdir::WalkDir;

use crate::config::RunConfig;
use crate::jsonl::{parse_records, read_ground_truth, read_oracles, to_lines, write_records};
use crate::project::load_model;
use crate::runner::{contexts, par_map, BackendFactory, FatalFlag, WallClock};

/// What a command did.
#[derive(Debug, Default)]
pub struct Report {
    pub counts: BTreeMap<String, usize>,
    pub warnings: Vec<String>,
}

impl Report {
    fn count(&mut self, key: &str, n: usize) {
        self.counts.insert(key.to_string(), n);
    }

    /// 0 when clean, 1 with warnings.
    pub fn exit_code(&self) -> i32 {
        if self.warnings.is_empty() {
            0
        } else {
            1
        }
    }
}

fn prepare_out(config: &RunConfig) -> Result<&Path> {
    fs::create_dir_all(&config.output_dir).with_context(|| format!("creating {}", config.output_dir.display()))?;
    Ok(&config.output_dir)
}

fn write_manifest(config: &RunConfig, command: &str, report: &Report) -> Result<()> {
    let manifest = json!({
        "command": command,
        "configHash": config.hash(),
        "counts": report.counts,
        "versions": { "oraclegen": env!("CARGO_PKG_VERSION"), "schema": SCHEMA_VERSION },
        "warnings": report.warnings.len(),
    });
    let path = config.output_dir.join("run.json");
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n").with_context(|| format!("writing {}", path.display()))
}

fn finish(config: &RunConfig, command: &str, report: Report) -> Result<Report> {
    write_manifest(config, command, &report)?;
    Ok(report)
}

fn model(config: &RunConfig) -> Result<ProjectModel> {
    load_model(&config.source_root, &config.signature_files)
}

fn options(config: &RunConfig) -> GenerateOptions {
    GenerateOptions { limits: config.limits, budget: config.budget }
}

fn fatal_check(flag: &FatalFlag) -> Result<()> {
    match flag.get() {
        Some(e) => bail!("backend unavailable: {e}"),
        None => Ok(()),
    }
}

pub fn analyze(config: &RunConfig) -> Result<Report> {
    let m = model(config)?;
    let out = prepare_out(config)?;
    let path = out.join("model.json");
    fs::write(&path, serde_json::to_string_pretty(&m)? + "\n").with_context(|| format!("writing {}", path.display()))?;
    let mut r = Report::default();
    r.count("classes", m.classes.len());
    r.count("externalClasses", m.external_classes.len());
    r.count("methods", m.method_count());
    r.warnings = m.warnings.iter().map(|w| format!("{w:?}")).collect();
    finish(config, "analyze", r)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TraceRecord<'a> {
    context_id: String,
    status: OracleStatus,
    oracle_text: &'a str,
    diagnostic: Option<&'a str>,
    trace: &'a [TraceStep],
}

/// Generates an oracle per context of the methods matching `filter`
/// (`Class` or `Class#method`, simple or qualified class name).
pub fn generate(config: &RunConfig, filter: Option<&str>) -> Result<Report> {
    let m = model(config)?;
    let factory = BackendFactory::new(&config.backend, &m)?;
    let matches = |class: &str, method: &str| match filter {
        None => true,
        Some(f) => {
            let (c, me) = f.split_once('#').map_or((f, None), |(c, me)| (c, Some(me)));
            (class == c || class.ends_with(&format!(".{c}"))) && me.is_none_or(|me| me == method)
        }
    };
    let mut ctxs = contexts(&m, config.free_text_attempts, matches);
    ctxs.sort_by_cached_key(|c| c.id());
    let flag = FatalFlag::default();
    let opts = options(config);
    let results: Vec<OracleResult> = par_map(&ctxs, config.parallelism, |ctx| {
        let mut b = flag.guard(factory.instance(&ctx.id()));
        if flag.is_set() {
            return OracleResult {
                status: OracleStatus::Aborted,
                oracle_text: String::new(),
                trace: Vec::new(),
                diagnostic: Some("skipped after a backend failure".into()),
            };
        }
        generate_oracle_using(ctx, &mut b, opts, &WallClock::start())
    });
    fatal_check(&flag)?;
    let out = prepare_out(config)?;
    let mut samples = Vec::new();
    let mut traces = Vec::new();
    let mut r = Report::default();
    for (ctx, res) in ctxs.iter().zip(&results) {
        traces.push(TraceRecord {
            context_id: ctx.id(),
            status: res.status,
            oracle_text: &res.oracle_text,
            diagnostic: res.diagnostic.as_deref(),
            trace: &res.trace,
        });
        match res.status {
            OracleStatus::Aborted => {
                r.warnings.push(format!("{}: aborted: {}", ctx.id(), res.diagnostic.as_deref().unwrap_or("")))
            }
            _ => samples.push(OracleSample::from_context(&config.project_name, ctx, res.oracle_text.clone())),
        }
    }
    write_records(&out.join("oracles.jsonl"), &samples)?;
    write_records(&out.join("traces.jsonl"), &traces)?;
    let status_count = |s| results.iter().filter(|x| x.status == s).count();
    r.count("contexts", ctxs.len());
    r.count("generated", status_count(OracleStatus::Generated));
    r.count("declined", status_count(OracleStatus::Declined));
    r.count("aborted", status_count(OracleStatus::Aborted));
    finish(config, "generate", r)
}

pub fn disaggregate_file(config: &RunConfig, oracles: &Path) -> Result<Report> {
    let m = model(config)?;
    let (samples, mut warnings) = read_oracles(oracles)?;
    let positives: Vec<&OracleSample> = samples.iter().filter(|s| !s.is_negative()).collect();
    let results = par_map(&positives, config.parallelism, |s| disaggregate(s, &m));
    let mut tokens: Vec<TokenSample> = Vec::new();
    for (s, res) in positives.iter().zip(results) {
        match res {
            Ok(t) => tokens.extend(t),
            Err(e) => warnings.push(format!("{} {} {:?}: {e}", s.class_name, s.method_signature, s.oracle_text)),
        }
    }
    let out = prepare_out(config)?;
    write_records(&out.join("tokens.jsonl"), &tokens)?;
    let mut r = Report { warnings, ..Report::default() };
    r.count("oracles", samples.len());
    r.count("positives", positives.len());
    r.count("tokens", tokens.len());
    finish(config, "disaggregate", r)
}

fn ratio_json(r: Option<Ratio<u64>>) -> Value {
    match r {
        Some(r) => json!({ "exact": format!("{}/{}", r.numer(), r.denom()), "percent": format_percent(Some(r)) }),
        None => Value::String("N/A".into()),
    }
}

fn counts_json(c: &Counts) -> Value {
    let m = c.metrics();
    json!({
        "tp": c.tp, "tn": c.tn, "fp": c.fp, "fn": c.fn_,
        "accuracy": ratio_json(m.accuracy),
        "precision": ratio_json(m.precision),
        "recall": ratio_json(m.recall),
        "f1": ratio_json(m.f1),
    })
}

pub fn evaluate(config: &RunConfig, ground_truth: &Path) -> Result<Report> {
    let m = model(config)?;
    let entries = read_ground_truth(ground_truth)?;
    let factory = BackendFactory::new(&config.backend, &m)?;
    let flag = FatalFlag::default();
    let opts = options(config);
    let results = par_map(&entries, config.parallelism, |e| {
        let id = e.context(&m).map(|c| c.id()).unwrap_or_default();
        let mut b = flag.guard(factory.instance(&id));
        evaluate_entry(&m, e, &mut b, opts, &WallClock::start())
    });
    fatal_check(&flag)?;
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut r = Report::default();
    for (i, res) in results.into_iter().enumerate() {
        match res {
            Ok(o) => outcomes.push(o),
            Err(e) => r.warnings.push(format!("{}: record {}: skipped: {e}", ground_truth.display(), i + 1)),
        }
    }
    let mode = if config.strict_metrics { MetricsMode::Strict } else { MetricsMode::Default };
    let report = compute_metrics(&outcomes, mode);
    let out = prepare_out(config)?;
    write_records(&out.join("outcomes.jsonl"), &outcomes)?;
    let review: Vec<&Outcome> = near_misses(&outcomes);
    write_records(&out.join("review.jsonl"), &review)?;
    fs::write(out.join("report.txt"), report.table())?;
    let projects: BTreeMap<&String, Value> = report.projects.iter().map(|(k, c)| (k, counts_json(c))).collect();
    let json = json!({ "mode": mode, "projects": projects, "total": counts_json(&report.total) });
    fs::write(out.join("report.json"), serde_json::to_string_pretty(&json)? + "\n")?;
    r.count("entries", entries.len());
    r.count("evaluated", outcomes.len());
    r.count("skipped", entries.len() - outcomes.len());
    finish(config, "evaluate", r)
}

fn java_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for e in WalkDir::new(dir).sort_by_file_name() {
        let e = e.with_context(|| format!("walking {}", dir.display()))?;
        if e.file_type().is_file() && e.path().extension().is_some_and(|x| x == "java") {
            out.push(e.into_path());
        }
    }
    Ok(out)
}

/// Injects every generated oracle of `outcomes` into the tests under
/// `test_dir`, writing the rewritten files under `tests/` and a unified diff.
pub fn inject(config: &RunConfig, outcomes: &Path, test_dir: &Path) -> Result<Report> {
    let m = model(config)?;
    let text = fs::read_to_string(outcomes).with_context(|| format!("reading {}", outcomes.display()))?;
    let outcomes: Vec<Outcome> = parse_records(&text, &outcomes.display().to_string())?;
    let files = java_files(test_dir)?;
    let mut sources: Vec<(String, String, String)> = Vec::new();
    for f in &files {
        let rel = f.strip_prefix(test_dir).unwrap_or(f).to_string_lossy().replace('\\', "/");
        let src = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        sources.push((rel, src.clone(), src));
    }
    let mut r = Report::default();
    let mut injected = 0;
    for o in outcomes.iter().filter(|o| o.generated.is_some()) {
        let oracle = o.generated.as_deref().unwrap_or_default();
        let ctx = match o.entry.context(&m) {
            Ok(c) => c,
            Err(e) => {
                r.warnings.push(format!("{} {}: {e}", o.entry.class_name, o.entry.method_signature));
                continue;
            }
        };
        for (rel, _, current) in &mut sources {
            let plan = match plan_injection(&ctx, rel, current, oracle) {
                Ok(p) => p,
                Err(e) => {
                    r.warnings.push(format!("{rel}: {e}"));
                    continue;
                }
            };
            r.warnings.extend(plan.diagnostics.iter().cloned());
            match apply_injection(current, &plan) {
                Ok(next) => {
                    if next != *current {
                        injected += plan.sites.len();
                        *current = next;
                    }
                }
                Err(e) => r.warnings.push(format!("{rel}: left unchanged: {e}")),
            }
        }
    }
    let out = prepare_out(config)?;
    let mut diff = String::new();
    let mut changed = 0;
    for (rel, before, after) in &sources {
        if before == after {
            continue;
        }
        changed += 1;
        let path = out.join("tests").join(rel);
        fs::create_dir_all(path.parent().ok_or_else(|| anyhow!("bad path {rel}"))?)?;
        fs::write(&path, after)?;
        let d = similar::TextDiff::from_lines(before.as_str(), after.as_str());
        diff.push_str(&d.unified_diff().context_radius(3).header(&format!("a/{rel}"), &format!("b/{rel}")).to_string());
    }
    fs::write(out.join("injection.diff"), diff)?;
    r.count("files", files.len());
    r.count("changedFiles", changed);
    r.count("assertions", injected);
    finish(config, "inject", r)
}

pub fn outcomes_lines(outcomes: &[Outcome]) -> Result<String> {
    to_lines(outcomes)
}
