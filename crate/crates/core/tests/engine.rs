mod common;

use std::collections::BTreeSet;

use common::{ctx, project};
use oraclegen_core::engine::{collect_specific, list_restrictions, type_of, ContextError, ExprType, Provenance};
use oraclegen_core::grammar::tokenize;
use oraclegen_core::model::ProjectModelBuilder;
use oraclegen_core::{GenerationContext, OracleType, PartialOracle, Token, TokenEngine};
use proptest::prelude::*;

const SERIES: (&str, &str) =
    ("AbstractCategoryItemRenderer", "void setSeriesItemLabelGenerator(int series, CategoryItemLabelGenerator generator)");
const CONVERT: (&str, &str) = ("ObjectConverter", "String convert(Object object)");
const MAP_CTOR: (&str, &str) = ("IntHashMap", "IntHashMap(int initialCapacity, float loadFactor)");

fn partial(text: &str) -> PartialOracle {
    PartialOracle::from_tokens(tokenize(text).unwrap())
}

fn texts(engine: &TokenEngine<'_, '_>, prefix: &str) -> Vec<String> {
    engine.candidates(&partial(prefix)).unwrap().texts().into_iter().map(String::from).collect()
}

/// Restriction id rejecting `next` after `prefix`, or `None` when admitted.
fn rejected_by(m: (&str, &str), t: OracleType, prefix: &str, next: &str) -> Option<&'static str> {
    let c = ctx(m.0, m.1, t, "");
    let e = TokenEngine::new(&c);
    let tok = next_token(prefix, next);
    e.check_next(&partial(prefix), &tok).err().map(|v| v.restriction)
}

fn next_token(prefix: &str, next: &str) -> Token {
    let joined = format!("{prefix} {next}");
    let toks = tokenize(&joined).unwrap();
    let t = toks.last().unwrap().clone();
    assert_eq!(t.text, next);
    t
}

#[test]
fn after_load_factor_only_comparisons_survive() {
    let c = ctx(MAP_CTOR.0, MAP_CTOR.1, OracleType::ExceptPost, "@throws IllegalArgumentException if the load factor is nonpositive.");
    let e = TokenEngine::new(&c);
    let got: BTreeSet<String> = texts(&e, "loadFactor").into_iter().collect();
    let want: BTreeSet<String> = ["==", "!=", "<", "<=", ">", ">="].iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);
}

#[test]
fn generic_tokens_of_the_map_constructor() {
    let c = ctx(MAP_CTOR.0, MAP_CTOR.1, OracleType::Pre, "");
    let e = TokenEngine::new(&c);
    let got: Vec<&str> = e.collect_generic().iter().map(|c| c.token.text.as_str()).collect();
    for t in ["loadFactor", "initialCapacity", "0", "1", "("] {
        assert!(got.contains(&t), "{t} missing");
    }
    assert!(!got.contains(&"methodResultID"));
}

#[test]
fn doc_literals_are_collected() {
    let c = ctx(
        "IntHashMap",
        "int get(int key)",
        OracleType::NormalPost,
        "@return the value to which the key is mapped, or -1 if the key is not mapped.",
    );
    let e = TokenEngine::new(&c);
    let lit = e.collect_generic().iter().find(|c| c.token.text == "-1").expect("-1 mined");
    assert_eq!(lit.provenance, Provenance::DocLiteral);
}

#[test]
fn void_methods_never_offer_method_result() {
    let c = ctx(SERIES.0, SERIES.1, OracleType::Pre, "@param series the series index (zero based).");
    let e = TokenEngine::new(&c);
    let got = texts(&e, "");
    assert!(!got.contains(&"methodResultID".to_string()));
    for t in ["series", "generator", "("] {
        assert!(got.contains(&t.to_string()), "{t} missing from {got:?}");
    }
    assert!(!e.collect_generic().iter().any(|c| c.token.text == "methodResultID"));
}

#[test]
fn no_instanceof_after_an_int() {
    let c = ctx(SERIES.0, SERIES.1, OracleType::Pre, "");
    let e = TokenEngine::new(&c);
    assert!(!texts(&e, "series").contains(&"instanceof".to_string()));
}

#[test]
fn normal_postconditions_of_void_methods_are_rejected() {
    let err = GenerationContext::lookup(project(), SERIES.0, SERIES.1, OracleType::NormalPost, "").unwrap_err();
    assert!(matches!(err, ContextError::VoidPostcondition(_)));
}

#[test]
fn iterator_members_of_an_iterable() {
    let c = ctx("Bag", "boolean hasElements()", OracleType::NormalPost, "");
    let got: BTreeSet<String> = collect_specific(&c, &partial("this.iterator().")).into_iter().map(|c| c.token.text).collect();
    let want: BTreeSet<String> =
        ["hasNext", "next", "remove", "equals", "toString", "getClass", "hashCode"].iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);
}

#[test]
fn class_members_include_is_array() {
    let c = ctx("ArrayListIterator", "ArrayListIterator(Object array)", OracleType::ExceptPost, "");
    let got: Vec<String> = collect_specific(&c, &partial("array.getClass().")).into_iter().map(|c| c.token.text).collect();
    assert!(got.contains(&"isArray".to_string()));
    assert!(collect_specific(&c, &partial("array.getClass()")).is_empty());
}

#[test]
fn unknown_receivers_have_no_members() {
    let c = ctx("Base64", "byte[] encodeInteger(BigInteger bigInteger)", OracleType::ExceptPost, "");
    assert!(collect_specific(&c, &partial("bigInteger.")).is_empty());
}

#[test]
fn types_of_operands() {
    let c = ctx(MAP_CTOR.0, MAP_CTOR.1, OracleType::ExceptPost, "");
    assert_eq!(type_of(&c, &partial("loadFactor <= 0"), 0..1).unwrap(), ExprType::NumericFloating);

    let c = ctx(CONVERT.0, CONVERT.1, OracleType::Pre, "");
    assert_eq!(type_of(&c, &partial("(object == null) == false"), 0..5).unwrap(), ExprType::BooleanProposition);

    let c = ctx("CSVPrinter", "void printHeaders(ResultSet resultSet)", OracleType::ExceptPost, "");
    assert_eq!(type_of(&c, &partial("resultSet.isClosed()"), 0..5).unwrap(), ExprType::Boolean);

    let c = ctx("Base64", "byte[] encodeInteger(BigInteger bigInteger)", OracleType::NormalPost, "");
    assert_eq!(type_of(&c, &partial("bigInteger"), 0..1).unwrap(), ExprType::Unknown);
    assert_eq!(
        type_of(&c, &partial("methodResultID.length"), 0..3).unwrap(),
        ExprType::NumericIntegral
    );
}

#[test]
fn unresolvable_members_are_typing_errors() {
    let c = ctx(CONVERT.0, CONVERT.1, OracleType::Pre, "");
    let v = type_of(&c, &partial("object.isArray()"), 0..5).unwrap_err();
    assert_eq!(v.restriction, "R8");
}

#[test]
fn r1_method_result_of_void_method() {
    assert_eq!(rejected_by(("Bag", "void add(E element)"), OracleType::ExceptPost, "", "methodResultID"), Some("R1"));
}

#[test]
fn r2_method_result_in_precondition() {
    assert_eq!(rejected_by(("IntHashMap", "int get(int key)"), OracleType::Pre, "", "methodResultID"), Some("R2"));
    assert_eq!(rejected_by(("IntHashMap", "int get(int key)"), OracleType::NormalPost, "", "methodResultID"), None);
}

#[test]
fn r3_instanceof_needs_reference_and_related_class() {
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "series", "instanceof"), Some("R3"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object", "instanceof"), None);
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object instanceof", "Convertible"), None);
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object instanceof", "object"), Some("R3"));
}

#[test]
fn r4_relational_needs_numbers() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object", "<"), Some("R4"));
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "series", "<"), None);
}

#[test]
fn r5_arithmetic_needs_numbers() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "(object == null) == false", "+"), Some("R5"));
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "series >= 1", "+"), None);
}

#[test]
fn r6_equality_needs_matching_categories() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object ==", "0"), Some("R6"));
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "series ==", "null"), Some("R6"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object ==", "null"), None);
}

#[test]
fn r7_dot_needs_a_known_reference() {
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "series", "."), Some("R7"));
    assert_eq!(
        rejected_by(("Base64", "byte[] encodeInteger(BigInteger bigInteger)"), OracleType::ExceptPost, "bigInteger", "."),
        Some("R7")
    );
}

#[test]
fn r8_members_must_exist() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object.", "isArray"), Some("R8"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object.getClass().", "isArray"), None);
}

#[test]
fn r8_package_private_members_stay_in_their_package() {
    let outside = ("CSVPrinter", "long getRecordCount()");
    assert_eq!(rejected_by(outside, OracleType::NormalPost, "Base64.", "CHUNK_SIZE"), Some("R8"));
    let inside = ("Base64", "boolean isBase64(byte octet)");
    assert_eq!(rejected_by(inside, OracleType::Pre, "Base64.", "CHUNK_SIZE"), None);
}

#[test]
fn r9_this_in_static_method() {
    let m = ("Shorts", "boolean contains(short[] array, short target)");
    assert_eq!(rejected_by(m, OracleType::NormalPost, "", "this"), Some("R9"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "", "this"), None);
}

#[test]
fn r10_jd_var_outside_quantifier() {
    let m = ("Shorts", "boolean contains(short[] array, short target)");
    assert_eq!(rejected_by(m, OracleType::NormalPost, "", "jdVar"), Some("R10"));
    assert_eq!(rejected_by(m, OracleType::NormalPost, "Arrays.stream(array).anyMatch(", "jdVar"), None);
    assert_eq!(
        rejected_by(m, OracleType::NormalPost, "Arrays.stream(array).anyMatch(jdVar -> Arrays.stream(array).", "anyMatch"),
        Some("R10")
    );
}

#[test]
fn r11_quantifiers_need_streams() {
    let m = ("ObjectConverter", "String convertAll(List<Object> objects)");
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object.", "anyMatch"), Some("R11"));
    assert_eq!(rejected_by(m, OracleType::Pre, "objects.stream()", "=="), Some("R11"));
    assert_eq!(rejected_by(m, OracleType::Pre, "objects.stream().", "noneMatch"), None);
}

#[test]
fn r12_calls_need_fillable_parameters() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "IntHashMap.", "capacityFor"), Some("R12"));
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "IntHashMap.", "capacityFor"), None);
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "IntHashMap.capacityFor(", "generator"), Some("R12"));
}

#[test]
fn r13_bare_boolean_literals() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "", "true"), Some("R13"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object == null ||", "false"), Some("R13"));
}

#[test]
fn r14_same_operand_on_both_sides() {
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "series ==", "series"), Some("R14"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "(object == null) ==", "("), Some("R14"));
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "series ==", "0"), None);
}

#[test]
fn r15_ternary_placement() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "(object == null", "?"), Some("R15"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object == null ? object != null : object == null", "?"), Some("R15"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "object == null", "?"), None);
}

#[test]
fn r16_literal_left_operand() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "", "0"), Some("R16"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "", "null"), Some("R16"));
}

#[test]
fn r17_non_boolean_atom() {
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "series", ";"), Some("R17"));
    let m = ("CSVPrinter", "void printHeaders(ResultSet resultSet)");
    assert_eq!(rejected_by(m, OracleType::ExceptPost, "resultSet.isClosed()", ";"), None);
}

#[test]
fn r18_void_calls() {
    assert_eq!(rejected_by(("Bag", "boolean hasElements()"), OracleType::NormalPost, "this.iterator().", "remove"), Some("R18"));
}

#[test]
fn r19_nesting_depth() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "((((((((", "("), Some("R19"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "(((((((", "("), None);
}

#[test]
fn r20_class_names_as_values() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "Shorts", "=="), Some("R20"));
    assert_eq!(rejected_by(SERIES, OracleType::Pre, "IntHashMap.capacityFor(", "Shorts"), Some("R20"));
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "", "Shorts"), None);
}

#[test]
fn r21_unknown_identifiers() {
    assert_eq!(rejected_by(CONVERT, OracleType::Pre, "", "foo"), Some("R21"));
}

#[test]
fn r22_token_budget() {
    let c = ctx(CONVERT.0, CONVERT.1, OracleType::Pre, "");
    let tok = next_token("", "object");
    let e = TokenEngine::new(&c).with_max_tokens(3);
    assert_eq!(e.check_next(&partial(""), &tok).unwrap_err().restriction, "R22");
    let e = TokenEngine::new(&c).with_max_tokens(4);
    assert!(e.check_next(&partial(""), &tok).is_ok());
    assert_eq!(e.completion_cost(&partial("object")).unwrap(), 3);
}

#[test]
fn every_restriction_is_exercised_by_a_test() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let mut text = String::new();
    for f in std::fs::read_dir(dir).unwrap() {
        let p = f.unwrap().path();
        if p.extension().is_some_and(|e| e == "rs") {
            text.push_str(&std::fs::read_to_string(p).unwrap());
        }
    }
    for r in list_restrictions() {
        assert!(text.contains(&format!("Some(\"{}\")", r.id)) || text.contains(&format!("\"{}\")", r.id)), "{} untested", r.id);
    }
}

fn one_method_model(param_ty: &str, name: &str) -> oraclegen_core::ProjectModel {
    let mut b = ProjectModelBuilder::new("mem");
    b.add_source("C.java", &format!("package p; public class C {{ public void m({param_ty} {name}) {{}} }}"));
    b.build().unwrap()
}

fn ordering_ops_after_param(param_ty: &str, name: &str) -> BTreeSet<String> {
    let model = one_method_model(param_ty, name);
    let c = GenerationContext::lookup(&model, "C", &format!("void m({param_ty} {name})"), OracleType::Pre, "").unwrap();
    let e = TokenEngine::new(&c);
    let after = e.candidates(&partial(name)).unwrap();
    after.texts().into_iter().filter(|t| oraclegen_core::grammar::RELATIONAL.contains(t)).map(String::from).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unknown_parameter_types_lose_relational_operators(name in "[a-z][a-zA-Z0-9]{0,8}") {
        prop_assume!(tokenize(&name).is_ok_and(|t| t.len() == 1 && t[0].kind == oraclegen_core::TokenKind::Identifier));
        prop_assume!(!["instanceof", "null", "true", "false", "this", "int", "new", "do", "if", "for"].contains(&name.as_str()));
        let as_int = ordering_ops_after_param("int", &name);
        let as_unknown = ordering_ops_after_param("Mystery", &name);
        prop_assert!(as_unknown.is_subset(&as_int));
        prop_assert!(as_unknown.len() < as_int.len());
        prop_assert!(as_unknown.iter().all(|t| t == "==" || t == "!="));
    }

    #[test]
    fn filter_output_is_a_subset_of_its_input(row in 0usize..48, cut in 0usize..30, mask in any::<u64>()) {
        let rows = common::positives();
        let r = &rows[row % rows.len()];
        let c = common::row_ctx(r);
        let e = TokenEngine::new(&c);
        let toks = tokenize(&oraclegen_core::grammar::canonicalize(&r.oracle).unwrap()).unwrap();
        let p = PartialOracle::from_tokens(toks[..cut.min(toks.len() - 1)].to_vec());
        let state = p.state().unwrap();
        let mut collected = e.collect_generic().to_vec();
        collected.extend(e.collect_specific(&p));
        let input: Vec<_> = collected.into_iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, c)| c).collect();
        let out = e.filter(&p, &state, &input);
        let names: BTreeSet<&str> = input.iter().map(|c| c.token.text.as_str()).collect();
        for t in out.texts() {
            prop_assert!(names.contains(t));
        }
    }
}
