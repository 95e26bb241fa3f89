mod common;

use common::{positives, row_ctx};
use oraclegen_core::grammar::{canonicalize, tokenize};
use oraclegen_core::{PartialOracle, TokenEngine};

#[test]
fn corpus_has_enough_positive_oracles() {
    assert!(positives().len() >= 30);
}

#[test]
fn every_corpus_oracle_type_checks() {
    for r in positives() {
        let ctx = row_ctx(&r);
        let engine = TokenEngine::new(&ctx);
        engine.check_text(&r.oracle).unwrap_or_else(|e| panic!("{}: {e}", r.oracle));
    }
}

#[test]
fn every_corpus_token_survives_the_filter() {
    for r in positives() {
        let ctx = row_ctx(&r);
        let engine = TokenEngine::new(&ctx);
        let canon = canonicalize(&r.oracle).unwrap();
        let toks = tokenize(&canon).unwrap();
        let mut partial = PartialOracle::new();
        for t in toks {
            let set = engine.candidates(&partial).unwrap();
            let Some(c) = set.get(&t.text) else {
                let why = engine.check_next(&partial, &t).err();
                panic!("{}: `{}` missing after `{}` ({why:?}); got {:?}", r.oracle, t.text, partial.rendered_text(), set.texts());
            };
            assert_eq!(c.token.kind, t.kind, "{} at `{}`", r.oracle, t.text);
            partial.tokens.push(t);
        }
    }
}
