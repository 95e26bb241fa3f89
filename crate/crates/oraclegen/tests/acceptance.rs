//! Acceptance suite: one PASS/FAIL line per primary criterion.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use oraclegen::commands;
use oraclegen::jsonl::read_ground_truth;
use oraclegen::project::load_model;
use oraclegen::runner::{contexts, script_book};
use oraclegen_core::augmentation::{apply_injection, plan_injection};
use oraclegen_core::dataset::{disaggregate, OracleSample};
use oraclegen_core::evaluation::{Counts, GroundTruthEntry};
use oraclegen_core::generation::{generate_oracle_using, GenerateOptions, NoClock};
use oraclegen_core::grammar::{canonicalize, tokenize};
use oraclegen_core::{GenerationContext, OracleType, PartialOracle, ProjectModel, TokenEngine};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn(&ProjectModel) -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lookup<'m>(m: &'m ProjectModel, class: &str, sig: &str, t: OracleType, tag: &str) -> GenerationContext<'m> {
    GenerationContext::lookup(m, class, sig, t, tag).unwrap_or_else(|e| panic!("{class} {sig}: {e}"))
}

fn ground_truth() -> Vec<GroundTruthEntry> {
    read_ground_truth(&common::fixtures().join("groundtruth.jsonl")).unwrap()
}

fn metrics_golden(_: &ProjectModel) -> Result<(), String> {
    let c = Counts { tp: 186, tn: 459, fp: 72, fn_: 169 };
    let p = c.metrics().percents();
    ensure(p == [Some(73), Some(72), Some(52), Some(61)], || format!("got {p:?}"))
}

fn load_factor_disaggregation(m: &ProjectModel) -> Result<(), String> {
    let ctx = lookup(
        m,
        "IntHashMap",
        "IntHashMap(int initialCapacity, float loadFactor)",
        OracleType::ExceptPost,
        "@throws IllegalArgumentException if the load factor is nonpositive.",
    );
    let s = disaggregate(&OracleSample::from_context("fixture", &ctx, "loadFactor<=0;"), m).map_err(|e| e.to_string())?;
    ensure(s.len() == 4, || format!("{} samples", s.len()))?;
    let legal: BTreeSet<&str> = s[1].legal_tokens.iter().map(String::as_str).collect();
    let ops: BTreeSet<&str> = ["==", "!=", "<", "<=", ">", ">="].into();
    ensure(legal == ops && s[1].legal_tokens.len() == 6, || format!("sample 2 legal tokens {:?}", s[1].legal_tokens))
}

const WORKED_EXAMPLES: &[&str] = &[
    "loadFactor<=0;",
    "source == null;",
    "bigInteger == null;",
    "resultSet.isClosed();",
    "(object == null) == false;",
    "array.getClass().isArray() == false;",
    "Arrays.stream(array).anyMatch(jdVar -> jdVar == target) ? methodResultID == true : methodResultID == false;",
];

fn replay_completeness(m: &ProjectModel) -> Result<(), String> {
    let gt = ground_truth();
    let positives: Vec<&GroundTruthEntry> = gt.iter().filter(|e| e.expected_oracle.is_some()).collect();
    ensure(positives.len() >= 30, || format!("only {} positive oracles", positives.len()))?;
    let canon: BTreeSet<String> = positives.iter().map(|e| canonicalize(e.expected_oracle.as_deref().unwrap()).unwrap()).collect();
    for q in WORKED_EXAMPLES {
        ensure(canon.contains(&canonicalize(q).unwrap()), || format!("corpus lacks `{q}`"))?;
    }
    let book = script_book(&common::fixtures().join("oracles.jsonl"), m).map_err(|e| format!("{e:#}"))?;
    for e in positives {
        let ctx = e.context(m).map_err(|x| x.to_string())?;
        let expected = canonicalize(e.expected_oracle.as_deref().unwrap()).unwrap();
        let engine = TokenEngine::new(&ctx);
        let mut partial = PartialOracle::new();
        for t in tokenize(&expected).unwrap() {
            let set = engine.candidates(&partial).map_err(|x| x.to_string())?;
            ensure(set.contains(&t.text), || format!("`{}` not offered after `{}`", t.text, partial.rendered_text()))?;
            partial.tokens.push(t);
        }
        let r = generate_oracle_using(&ctx, &mut book.backend_for(&ctx.id()), GenerateOptions::default(), &NoClock);
        ensure(r.oracle_text == expected, || format!("replayed `{}`, expected `{expected}`", r.oracle_text))?;
    }
    Ok(())
}

fn soundness_fuzz(m: &ProjectModel) -> Result<(), String> {
    let ctxs = contexts(m, true, |_, _| true);
    let engines: Vec<TokenEngine<'_, '_>> = ctxs.iter().map(TokenEngine::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ac1e);
    for n in 0..10_000 {
        let i = rng.gen_range(0..ctxs.len());
        let (ctx, engine) = (&ctxs[i], &engines[i]);
        let mut partial = PartialOracle::new();
        let text = loop {
            let set = engine.candidates(&partial).map_err(|e| e.to_string())?;
            ensure(!set.is_empty(), || format!("walk {n}: dead end after `{}`", partial.rendered_text()))?;
            let t = set.candidates()[rng.gen_range(0..set.len())].token.clone();
            let end = t.is(";");
            partial.tokens.push(t);
            ensure(partial.len() <= 64, || format!("walk {n}: over 64 tokens"))?;
            if end {
                break partial.rendered_text();
            }
        };
        engine.check_text(&text).map_err(|e| format!("walk {n} in {}: `{text}`: {e}", ctx.id()))?;
    }
    Ok(())
}

const SERIES: (&str, &str) =
    ("AbstractCategoryItemRenderer", "void setSeriesItemLabelGenerator(int series, CategoryItemLabelGenerator generator)");
const CONVERT: (&str, &str) = ("ObjectConverter", "String convert(Object object)");
const CONVERT_ALL: (&str, &str) = ("ObjectConverter", "String convertAll(List<Object> objects)");
const GET: (&str, &str) = ("IntHashMap", "int get(int key)");
const ADD: (&str, &str) = ("Bag", "void add(E element)");
const HAS: (&str, &str) = ("Bag", "boolean hasElements()");
const CONTAINS: (&str, &str) = ("Shorts", "boolean contains(short[] array, short target)");

/// (id, method, oracle type, prefix, token, admitted)
const RESTRICTION_CASES: &[(&str, (&str, &str), OracleType, &str, &str, bool)] = &[
    ("R1", ADD, OracleType::ExceptPost, "", "methodResultID", false),
    ("R1", GET, OracleType::NormalPost, "", "methodResultID", true),
    ("R2", GET, OracleType::Pre, "", "methodResultID", false),
    ("R2", GET, OracleType::ExceptPost, "", "methodResultID", true),
    ("R3", SERIES, OracleType::Pre, "series", "instanceof", false),
    ("R3", CONVERT, OracleType::Pre, "object", "instanceof", true),
    ("R4", CONVERT, OracleType::Pre, "object", "<", false),
    ("R4", SERIES, OracleType::Pre, "series", "<", true),
    ("R5", CONVERT, OracleType::Pre, "(object == null) == false", "+", false),
    ("R5", SERIES, OracleType::Pre, "series >= 1", "+", true),
    ("R6", CONVERT, OracleType::Pre, "object ==", "0", false),
    ("R6", CONVERT, OracleType::Pre, "object ==", "null", true),
    ("R7", SERIES, OracleType::Pre, "series", ".", false),
    ("R7", CONVERT, OracleType::Pre, "object", ".", true),
    ("R8", CONVERT, OracleType::Pre, "object.", "isArray", false),
    ("R8", CONVERT, OracleType::Pre, "object.getClass().", "isArray", true),
    ("R9", CONTAINS, OracleType::NormalPost, "", "this", false),
    ("R9", CONVERT, OracleType::Pre, "", "this", true),
    ("R10", CONTAINS, OracleType::NormalPost, "", "jdVar", false),
    ("R10", CONTAINS, OracleType::NormalPost, "Arrays.stream(array).anyMatch(", "jdVar", true),
    ("R11", CONVERT, OracleType::Pre, "object.", "anyMatch", false),
    ("R11", CONVERT_ALL, OracleType::Pre, "objects.stream().", "noneMatch", true),
    ("R12", CONVERT, OracleType::Pre, "IntHashMap.", "capacityFor", false),
    ("R12", SERIES, OracleType::Pre, "IntHashMap.", "capacityFor", true),
    ("R13", CONVERT, OracleType::Pre, "", "true", false),
    ("R13", HAS, OracleType::NormalPost, "methodResultID ==", "true", true),
    ("R14", SERIES, OracleType::Pre, "series ==", "series", false),
    ("R14", SERIES, OracleType::Pre, "series ==", "0", true),
    ("R15", CONVERT, OracleType::Pre, "(object == null", "?", false),
    ("R15", CONVERT, OracleType::Pre, "object == null", "?", true),
];

fn restriction_suite(m: &ProjectModel) -> Result<(), String> {
    for &(id, (class, sig), t, prefix, next, admitted) in RESTRICTION_CASES {
        let ctx = lookup(m, class, sig, t, "");
        let engine = TokenEngine::new(&ctx);
        let partial = PartialOracle::from_tokens(tokenize(prefix).unwrap());
        let token = tokenize(&format!("{prefix} {next}")).unwrap().pop().unwrap();
        let offered = engine.candidates(&partial).map_err(|e| e.to_string())?.contains(next);
        let verdict = engine.check_next(&partial, &token);
        if admitted {
            ensure(offered && verdict.is_ok(), || format!("{id}: `{next}` after `{prefix}` pruned: {verdict:?}"))?;
        } else {
            ensure(!offered && verdict.as_ref().is_err_and(|v| v.restriction == id), || {
                format!("{id}: `{next}` after `{prefix}` gave {verdict:?}")
            })?;
        }
    }
    for i in 1..=15 {
        let id = format!("R{i}");
        for admitted in [true, false] {
            ensure(RESTRICTION_CASES.iter().any(|c| c.0 == id && c.5 == admitted), || format!("{id} lacks a case"))?;
        }
    }
    Ok(())
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    out
}

fn pipeline(dir: &Path) -> Result<Vec<Vec<(String, Vec<u8>)>>, String> {
    let script = format!("scripted:{}", common::fixtures().join("oracles.jsonl").display());
    let mut snaps = Vec::new();
    let a = dir.join("analyze");
    commands::analyze(&common::config(&a, &script)).map_err(|e| format!("{e:#}"))?;
    let g = dir.join("generate");
    commands::generate(&common::config(&g, &script), None).map_err(|e| format!("{e:#}"))?;
    let d = dir.join("disaggregate");
    commands::disaggregate_file(&common::config(&d, &script), &g.join("oracles.jsonl")).map_err(|e| format!("{e:#}"))?;
    for p in [a, g, d] {
        snaps.push(snapshot(&p));
    }
    Ok(snaps)
}

fn determinism(_: &ProjectModel) -> Result<(), String> {
    let (x, y) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (a, b) = (pipeline(x.path())?, pipeline(y.path())?);
    ensure(a.iter().all(|s| s.len() >= 2), || "missing outputs".into())?;
    for (sa, sb) in a.iter().zip(&b) {
        for (fa, fb) in sa.iter().zip(sb) {
            ensure(fa == fb, || format!("{} differs between runs", fa.0))?;
        }
    }
    Ok(())
}

const INJECTIONS: &[(&str, &str, OracleType, &str, &str, &str, &str)] = &[
    (
        "AbstractCategoryItemRenderer",
        "void setSeriesItemLabelGenerator(int series, CategoryItemLabelGenerator generator)",
        OracleType::Pre,
        "@param series the series index (zero based).",
        "RendererTest.java",
        "series >= 0;",
        "RendererTest.pre.golden",
    ),
    (
        "IntHashMap",
        "boolean isEmpty()",
        OracleType::NormalPost,
        "@return true if this hashtable maps no keys to values; false otherwise.",
        "IntHashMapTest.java",
        "methodResultID == true;",
        "IntHashMapTest.post.golden",
    ),
    (
        "Base64",
        "byte[] encodeInteger(BigInteger bigInteger)",
        OracleType::ExceptPost,
        "@throws NullPointerException if null is passed in",
        "Base64Test.java",
        "bigInteger == null;",
        "Base64Test.except.golden",
    ),
];

fn injection_goldens(m: &ProjectModel) -> Result<(), String> {
    let dir = common::fixtures().join("inject");
    for &(class, sig, t, tag, file, oracle, golden) in INJECTIONS {
        let ctx = lookup(m, class, sig, t, tag);
        let src = fs::read_to_string(dir.join(file)).unwrap();
        let plan = plan_injection(&ctx, file, &src, oracle).map_err(|e| e.to_string())?;
        let out = apply_injection(&src, &plan).map_err(|e| e.to_string())?;
        ensure(out == fs::read_to_string(dir.join(golden)).unwrap(), || format!("{file} differs from {golden}"))?;
        let again = plan_injection(&ctx, file, &out, oracle).and_then(|p| apply_injection(&out, &p)).map_err(|e| e.to_string())?;
        ensure(again == out, || format!("{file}: second injection changed the file"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let model = load_model(&common::source_root(), &common::signatures()).expect("fixture project loads");
    let checks: &[(&str, Check, Duration)] = &[
        ("metrics golden", metrics_golden, Duration::from_secs(1)),
        ("loadFactor<=0; disaggregation", load_factor_disaggregation, Duration::from_secs(1)),
        ("replay completeness", replay_completeness, Duration::from_secs(30)),
        ("grammar/filter soundness fuzz", soundness_fuzz, Duration::from_secs(120)),
        ("restriction unit suite", restriction_suite, Duration::from_secs(30)),
        ("determinism", determinism, Duration::from_secs(60)),
        ("injection golden files", injection_goldens, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (name, check, budget) in checks {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| check(&model))).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let result = result.and_then(|_| ensure(took <= *budget, || format!("took {took:.2?}, budget {budget:?}")));
        match result {
            Ok(()) => println!("PASS  {name} ({:.2}s)", took.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name} ({:.2}s): {e}", took.as_secs_f64());
            }
        }
    }
    println!("{} of {} acceptance criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
