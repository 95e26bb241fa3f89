mod common;

use std::collections::BTreeSet;

use common::{corpus, positives, project, row_ctx, Row};
use oraclegen_core::dataset::*;
use oraclegen_core::grammar::{render_tokens, tokenize};
use oraclegen_core::OracleType;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sample(r: &Row) -> OracleSample {
    OracleSample::from_context("fixture", &row_ctx(r), r.oracle.clone())
}

fn load_factor_sample(oracle: &str) -> OracleSample {
    let r = Row {
        class: "IntHashMap".into(),
        signature: "IntHashMap(int initialCapacity, float loadFactor)".into(),
        oracle_type: OracleType::ExceptPost,
        tag: "@throws IllegalArgumentException if the load factor is nonpositive.".into(),
        oracle: oracle.into(),
    };
    sample(&r)
}

/// Token count by regex, independent of the crate's lexer. Every `-` right
/// before a digit in the corpus starts a negative literal.
fn count_tokens(oracle: &str) -> usize {
    let re = regex::Regex::new(r#""[^"]*"|-?\d+(?:\.\d+)?|[A-Za-z_$][A-Za-z0-9_$]*|==|!=|<=|>=|&&|\|\||->|\S"#).unwrap();
    re.find_iter(oracle).count()
}

#[test]
fn load_factor_oracle_gives_four_samples() {
    let s = disaggregate(&load_factor_sample("loadFactor<=0;"), project()).unwrap();
    assert_eq!(s.len(), 4);
    let ops: BTreeSet<&str> = s[1].legal_tokens.iter().map(String::as_str).collect();
    assert_eq!(ops, BTreeSet::from(["==", "!=", "<", "<=", ">", ">="]));
    assert_eq!(s[1].legal_tokens.len(), 6);
    let next: Vec<&str> = s.iter().map(|t| t.next_token.as_str()).collect();
    assert_eq!(next, ["loadFactor", "<=", "0", ";"]);
    let partials: Vec<&str> = s.iter().map(|t| t.partial_oracle_text.as_str()).collect();
    assert_eq!(partials, ["", "loadFactor", "loadFactor <=", "loadFactor <= 0"]);
    assert!(s.iter().all(|t| t.oracle.oracle_text == "loadFactor <= 0;"));
    assert_eq!(reassemble(&s).unwrap(), "loadFactor <= 0;");
}

#[test]
fn tautology_is_a_replay_breach() {
    match disaggregate(&load_factor_sample("true;"), project()) {
        Err(DatasetError::ReplayBreach { position, token, restriction, .. }) => {
            assert_eq!((position, token.as_str(), restriction), (1, "true", "R13"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn breach_reports_the_failing_position() {
    let e = disaggregate(&load_factor_sample("loadFactor instanceof Object;"), project()).unwrap_err();
    assert!(matches!(e, DatasetError::ReplayBreach { position: 2, restriction: "R3", .. }), "{e}");
}

#[test]
fn negatives_do_not_disaggregate() {
    let neg = corpus().into_iter().find(|r| r.oracle.is_empty()).unwrap();
    assert_eq!(disaggregate(&sample(&neg), project()), Err(DatasetError::Negative));
}

#[test]
fn corpus_disaggregates_to_one_sample_per_token() {
    let mut total = 0;
    let mut expected = 0;
    for r in positives() {
        let s = sample(&r);
        let tokens = disaggregate(&s, project()).unwrap();
        assert_eq!(tokens.len(), count_tokens(&r.oracle), "{}", r.oracle);
        expected += count_tokens(&r.oracle);
        total += tokens.len();
        for t in &tokens {
            t.validate().unwrap();
            let mut prefix = tokenize(&t.partial_oracle_text).unwrap();
            prefix.extend(tokenize(&t.next_token).unwrap());
            assert!(t.oracle.oracle_text.starts_with(&render_tokens(&prefix)));
        }
        assert_eq!(reassemble(&tokens).unwrap(), r.oracle);
    }
    assert_eq!(total, expected);
}

#[test]
fn reassemble_guards() {
    let a = disaggregate(&load_factor_sample("loadFactor <= 0;"), project()).unwrap();
    let b = disaggregate(&load_factor_sample("loadFactor < 1;"), project()).unwrap();
    let mixed: Vec<TokenSample> = a.iter().take(2).chain(b.iter().skip(2)).cloned().collect();
    assert_eq!(reassemble(&mixed), Err(DatasetError::IdentityMismatch));
    let gap: Vec<TokenSample> = a.iter().enumerate().filter(|(i, _)| *i != 1).map(|(_, t)| t.clone()).collect();
    assert!(matches!(reassemble(&gap), Err(DatasetError::Gap { .. })));
    assert_eq!(reassemble(&[]), Err(DatasetError::Empty));
    let mut bad = a[0].clone();
    bad.next_token = "0".into();
    assert!(bad.validate().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn reassemble_ignores_order(seed in any::<u64>(), pick in 0usize..1000) {
        let rows = positives();
        let r = &rows[pick % rows.len()];
        let mut s = disaggregate(&sample(r), project()).unwrap();
        s.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(reassemble(&s).unwrap(), r.oracle.clone());
    }
}

#[test]
fn stats_match_a_line_count() {
    let text = std::fs::read_to_string(common::fixtures().join("oracles.txt")).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).collect();
    let negatives = rows.iter().filter(|l| l.trim_end().ends_with('|')).count();
    let samples: Vec<OracleSample> = corpus().iter().map(sample).collect();
    let st = stats(&samples);
    assert_eq!(st.total, rows.len());
    assert_eq!(st.negative, negatives);
    assert_eq!(st.positive, rows.len() - negatives);
    for ty in OracleType::ALL {
        let tagged: Vec<&&str> = rows.iter().filter(|l| l.contains(&format!(" | {} | ", ty.as_str()))).collect();
        let c = &st.by_type[&ty];
        assert_eq!(c.positive + c.negative, tagged.len());
        assert_eq!(c.negative, tagged.iter().filter(|l| l.trim_end().ends_with('|')).count());
    }
}

#[test]
fn duplicates_are_reported() {
    let rows = corpus();
    let mut samples: Vec<OracleSample> = rows.iter().take(3).map(sample).collect();
    assert!(duplicates(&samples).is_empty());
    samples.push(samples[1].clone());
    assert_eq!(duplicates(&samples), vec![(1, 3)]);
}

#[test]
fn positive_samples_must_parse() {
    let mut s = load_factor_sample("loadFactor <= ;");
    assert!(s.validate().is_err());
    s.oracle_text.clear();
    assert!(s.validate().is_ok());
}
