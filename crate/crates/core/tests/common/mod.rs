#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use oraclegen_core::model::{ProjectModelBuilder, SignatureClass};
use oraclegen_core::{GenerationContext, OracleType, ProjectModel};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn walk(dir: &Path, out: &mut Vec<PathBuf>) {
    let mut entries: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for p in entries {
        if p.is_dir() {
            walk(&p, out);
        } else {
            out.push(p);
        }
    }
}

fn signature_class(line: &str) -> SignatureClass {
    let v: serde_json::Value = serde_json::from_str(line).unwrap();
    let strings = |key: &str| -> Vec<String> {
        v.get(key)
            .and_then(|a| a.as_array())
            .map(|a| a.iter().map(|s| s.as_str().unwrap().to_string()).collect())
            .unwrap_or_default()
    };
    SignatureClass {
        qualified_name: v["qualifiedName"].as_str().unwrap().to_string(),
        is_interface: v.get("isInterface").and_then(|b| b.as_bool()).unwrap_or(false),
        super_types: strings("superTypes"),
        fields: strings("fields"),
        methods: strings("methods"),
    }
}

pub fn load_project(root: &Path) -> ProjectModel {
    let mut files = Vec::new();
    walk(root, &mut files);
    let mut b = ProjectModelBuilder::new(root.display().to_string());
    for f in &files {
        let name = f.to_string_lossy();
        if name.ends_with(".java") {
            b.add_source(&name, &fs::read_to_string(f).unwrap());
        } else if name.ends_with(".sig.jsonl") {
            for (i, line) in fs::read_to_string(f).unwrap().lines().enumerate() {
                if !line.trim().is_empty() {
                    b.add_signature_class(&name, i + 1, &signature_class(line)).unwrap();
                }
            }
        }
    }
    b.build().unwrap()
}

pub fn project() -> &'static ProjectModel {
    static MODEL: std::sync::OnceLock<ProjectModel> = std::sync::OnceLock::new();
    MODEL.get_or_init(|| load_project(&fixtures().join("project")))
}

#[derive(Clone, Debug)]
pub struct Row {
    pub class: String,
    pub signature: String,
    pub oracle_type: OracleType,
    pub tag: String,
    pub oracle: String,
}

pub fn corpus() -> Vec<Row> {
    let text = fs::read_to_string(fixtures().join("oracles.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split(" | ").map(str::trim).collect();
            assert!(f.len() == 5 || f.len() == 4 && l.ends_with('|'), "bad row {l}");
            Row {
                class: f[0].into(),
                signature: f[1].into(),
                oracle_type: OracleType::parse(f[2]).unwrap(),
                tag: f[3].trim_end_matches('|').trim().into(),
                oracle: f.get(4).map(|s| s.to_string()).unwrap_or_default(),
            }
        })
        .collect()
}

pub fn positives() -> Vec<Row> {
    corpus().into_iter().filter(|r| !r.oracle.is_empty()).collect()
}

pub fn ctx(class: &str, signature: &str, oracle_type: OracleType, tag: &str) -> GenerationContext<'static> {
    GenerationContext::lookup(project(), class, signature, oracle_type, tag)
        .unwrap_or_else(|e| panic!("{class} {signature}: {e}"))
}

pub fn row_ctx(r: &Row) -> GenerationContext<'static> {
    ctx(&r.class, &r.signature, r.oracle_type, &r.tag)
}
