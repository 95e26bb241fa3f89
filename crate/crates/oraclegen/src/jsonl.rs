//! Line-delimited JSON datasets. Every line is one object with sorted keys
//! and a `"schema": "v1"` field.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use oraclegen_core::dataset::{duplicates, OracleSample, TokenSample, SCHEMA_VERSION};
use oraclegen_core::evaluation::GroundTruthEntry;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_KEY: &str = "schema";

/// One record as a line, without the newline.
pub fn to_line<T: Serialize>(record: &T) -> Result<String> {
    let mut v = serde_json::to_value(record)?;
    let obj = v.as_object_mut().ok_or_else(|| anyhow!("record is not an object"))?;
    obj.insert(SCHEMA_KEY.into(), Value::String(SCHEMA_VERSION.into()));
    Ok(serde_json::to_string(&v)?)
}

pub fn to_lines<T: Serialize>(records: &[T]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&to_line(r)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn write_records<T: Serialize>(path: &Path, records: &[T]) -> Result<()> {
    fs::write(path, to_lines(records)?).with_context(|| format!("writing {}", path.display()))
}

fn parse_line<T: DeserializeOwned>(line: &str, fix: impl Fn(&mut serde_json::Map<String, Value>)) -> Result<T> {
    let mut v: Value = serde_json::from_str(line)?;
    let obj = v.as_object_mut().ok_or_else(|| anyhow!("not a JSON object"))?;
    match obj.remove(SCHEMA_KEY) {
        Some(Value::String(s)) if s == SCHEMA_VERSION => {}
        Some(other) => bail!("unsupported schema {other}"),
        None => bail!("missing field `{SCHEMA_KEY}`"),
    }
    fix(obj);
    Ok(serde_json::from_value(v)?)
}

/// Parses `text`, naming the 1-based line of the first bad record.
pub fn parse_records<T: DeserializeOwned>(text: &str, origin: &str) -> Result<Vec<T>> {
    parse_with(text, origin, |_| {})
}

fn parse_with<T: DeserializeOwned>(
    text: &str,
    origin: &str,
    fix: impl Fn(&mut serde_json::Map<String, Value>),
) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_line(line, &fix).with_context(|| format!("{origin}:{}", i + 1))?);
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Oracle samples, and a warning per duplicate sample.
pub fn parse_oracles(text: &str, origin: &str) -> Result<(Vec<OracleSample>, Vec<String>)> {
    let samples: Vec<OracleSample> = parse_records(text, origin)?;
    for (i, s) in samples.iter().enumerate() {
        s.validate().with_context(|| format!("{origin}: record {}", i + 1))?;
    }
    let warnings = duplicates(&samples)
        .into_iter()
        .map(|(a, b)| format!("{origin}: record {} duplicates record {}", b + 1, a + 1))
        .collect();
    Ok((samples, warnings))
}

pub fn read_oracles(path: &Path) -> Result<(Vec<OracleSample>, Vec<String>)> {
    parse_oracles(&read(path)?, &path.display().to_string())
}

pub fn parse_tokens(text: &str, origin: &str) -> Result<Vec<TokenSample>> {
    let samples: Vec<TokenSample> = parse_records(text, origin)?;
    for (i, s) in samples.iter().enumerate() {
        s.validate().with_context(|| format!("{origin}: record {}", i + 1))?;
    }
    Ok(samples)
}

pub fn read_tokens(path: &Path) -> Result<Vec<TokenSample>> {
    parse_tokens(&read(path)?, &path.display().to_string())
}

/// Ground truth; `expectedOracle` may be `null`, absent, or `"NONE"`.
pub fn parse_ground_truth(text: &str, origin: &str) -> Result<Vec<GroundTruthEntry>> {
    let entries: Vec<GroundTruthEntry> = parse_with(text, origin, |obj| {
        match obj.get("expectedOracle") {
            Some(Value::String(s)) if s == "NONE" || s.is_empty() => {
                obj.insert("expectedOracle".into(), Value::Null);
            }
            None => {
                obj.insert("expectedOracle".into(), Value::Null);
            }
            _ => {}
        }
    })?;
    let mut seen = BTreeSet::new();
    for (i, e) in entries.iter().enumerate() {
        if let Some(o) = &e.expected_oracle {
            oraclegen_core::grammar::canonicalize(o).with_context(|| format!("{origin}: record {}", i + 1))?;
        }
        let key = (&e.class_name, &e.method_signature, e.oracle_type, &e.tag_text);
        if !seen.insert(key) {
            bail!("{origin}: record {} repeats method, oracle type, and tag of an earlier record", i + 1);
        }
    }
    Ok(entries)
}

pub fn read_ground_truth(path: &Path) -> Result<Vec<GroundTruthEntry>> {
    parse_ground_truth(&read(path)?, &path.display().to_string())
}
