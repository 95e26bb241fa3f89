mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use clap::CommandFactory;
use common::run_flags;
use oraclegen::cli::Cli;

fn oraclegen(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oraclegen")).args(args).output().unwrap()
}

fn args(cmd: &str, out: &Path, extra: &[&str]) -> Vec<String> {
    let mut v = vec![cmd.to_string()];
    v.extend(run_flags(out));
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn files(dir: &Path) -> Vec<(String, String)> {
    let mut names: Vec<String> =
        fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), fs::read_to_string(dir.join(&n)).unwrap())).collect()
}

#[test]
fn pipeline_outputs_are_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, parallel) in [(a.path(), "1"), (b.path(), "3")] {
        for cmd in ["analyze", "generate"] {
            let o = oraclegen(&args(cmd, dir, &["--parallel", parallel]));
            assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        }
        let oracles = dir.join("oracles.jsonl").display().to_string();
        let o = oraclegen(&args("disaggregate", dir, &["--parallel", parallel, &oracles]));
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (fa, fb) = (files(a.path()), files(b.path()));
    let names: Vec<&str> = fa.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["model.json", "oracles.jsonl", "run.json", "tokens.jsonl", "traces.jsonl"]);
    for ((n, x), (_, y)) in fa.iter().zip(&fb) {
        if n == "run.json" {
            continue;
        }
        assert_eq!(x, y, "{n}");
    }
    assert!(!fa[2].1.contains("time"));
}

#[test]
fn analyze_reports_the_model() {
    let dir = tempfile::tempdir().unwrap();
    let o = oraclegen(&args("analyze", dir.path(), &[]));
    assert_eq!(o.status.code(), Some(0));
    let model: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("model.json")).unwrap()).unwrap();
    let classes = model["classes"].as_object().unwrap();
    assert!(classes.contains_key("org.example.collections.IntHashMap"));
    let run: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(run["command"], "analyze");
    assert_eq!(run["counts"]["classes"].as_u64().unwrap() as usize, classes.len());
    assert_eq!(run["configHash"].as_str().unwrap().len(), 64);
}

#[test]
fn generate_filters_by_class_and_method() {
    let dir = tempfile::tempdir().unwrap();
    let o = oraclegen(&args("generate", dir.path(), &["--only", "IntHashMap#capacityFor"]));
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("oracles.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.contains("capacityFor")));
}

#[test]
fn warnings_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let line = fs::read_to_string(common::fixtures().join("oracles.jsonl")).unwrap().lines().next().unwrap().to_string();
    let mut v: serde_json::Value = serde_json::from_str(&line).unwrap();
    v["oracleText"] = "true;".into();
    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, format!("{line}\n{v}\n")).unwrap();
    let o = oraclegen(&args("disaggregate", &dir.path().join("out"), &[bad.to_str().unwrap()]));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("R13"));
}

#[test]
fn fatal_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = oraclegen(&["analyze".into(), "--out".into(), dir.path().display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("source-root"));
    let o = oraclegen(&args("generate", dir.path(), &["--backend", "oracle-machine"]));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("config key `backend`"));
    let url = common::closed_port_url();
    let gt = common::fixtures().join("groundtruth.jsonl").display().to_string();
    let o = oraclegen(&args("evaluate", dir.path(), &["--backend", &format!("remote:{url}"), &gt]));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(&url));
    assert_eq!(oraclegen(&["frobnicate".into()]).status.code(), Some(2));
}

#[test]
fn scripted_evaluation_is_perfect_and_injects() {
    let dir = tempfile::tempdir().unwrap();
    let script = format!("scripted:{}", common::fixtures().join("oracles.jsonl").display());
    let gt = common::fixtures().join("groundtruth.jsonl").display().to_string();
    let o = oraclegen(&args("evaluate", dir.path(), &["--backend", &script, "--strict-metrics", &gt]));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    let total = report.lines().last().unwrap();
    assert!(total.contains("100%") && !total.contains(" 0%"), "{report}");
    assert_eq!(fs::read_to_string(dir.path().join("review.jsonl")).unwrap(), "");
    let outcomes = dir.path().join("outcomes.jsonl").display().to_string();
    let tests = common::fixtures().join("inject").display().to_string();
    let o = oraclegen(&args("inject", dir.path(), &[&outcomes, &tests]));
    assert!(o.status.code().unwrap() <= 1, "{}", String::from_utf8_lossy(&o.stderr));
    let diff = fs::read_to_string(dir.path().join("injection.diff")).unwrap();
    assert!(diff.contains("+        assertTrue(s >= 0);"), "{diff}");
    assert!(dir.path().join("tests/RendererTest.java").exists());
}

#[test]
fn restrictions_and_grammar_print() {
    let o = oraclegen(&["restrictions".into()]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text, oraclegen_core::engine::restrictions_markdown());
    let o = oraclegen(&["grammar".into()]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), oraclegen_core::grammar::GRAMMAR_EBNF);
}

fn help_markdown() -> String {
    let mut root = Cli::command();
    let mut out = String::from("# oraclegen command line\n\n```text\n");
    out.push_str(&root.render_long_help().to_string());
    out.push_str("```\n");
    root.build();
    for sub in root.get_subcommands_mut() {
        out.push_str(&format!("\n## {}\n\n```text\n", sub.get_name()));
        out.push_str(&sub.render_long_help().to_string());
        out.push_str("```\n");
    }
    out
}

#[test]
fn help_matches_committed_docs() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/cli.md");
    let actual = help_markdown();
    if std::env::var_os("ORACLEGEN_BLESS").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_default();
    assert!(expected == actual, "docs/cli.md is stale; rerun with ORACLEGEN_BLESS=1");
    for flag in ["--source-root", "--sig", "--backend", "--out", "--limit-tokens", "--parallel", "--strict-metrics", "--free-text", "--config"] {
        assert!(actual.matches(flag).count() >= 5, "{flag}");
    }
}
