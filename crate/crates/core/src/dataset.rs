//! Oracle and token sample records, disaggregation of an oracle into
//! per-position token samples, and the inverse.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::engine::{ContextError, GenerationContext, OracleType, TokenEngine};
use crate::grammar::{canonicalize, render_tokens, tokenize, OracleSyntaxError, PartialOracle};
use crate::model::ProjectModel;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Version tag carried by every dataset line.
pub const SCHEMA_VERSION: &str = "v1";

/// One oracle (or negative sample, when `oracle_text` is empty) for one doc
/// tag of one method.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct OracleSample {
    pub project_name: String,
    pub class_name: String,
    pub method_signature: String,
    pub method_source: String,
    pub method_javadoc: String,
    pub oracle_type: OracleType,
    pub tag_text: String,
    pub oracle_text: String,
}

impl OracleSample {
    pub fn from_context(project_name: &str, ctx: &GenerationContext<'_>, oracle_text: impl Into<String>) -> OracleSample {
        OracleSample {
            project_name: project_name.to_string(),
            class_name: ctx.class.qualified_name.clone(),
            method_signature: ctx.unit.signature_text.clone(),
            method_source: ctx.unit.source_text.clone(),
            method_javadoc: ctx.unit.doc_text.clone(),
            oracle_type: ctx.oracle_type,
            tag_text: ctx.tag_text(),
            oracle_text: oracle_text.into(),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.oracle_text.is_empty()
    }

    /// The generation context this sample was written for.
    pub fn context<'m>(&self, model: &'m ProjectModel) -> Result<GenerationContext<'m>, ContextError> {
        GenerationContext::lookup(model, &self.class_name, &self.method_signature, self.oracle_type, &self.tag_text)
    }

    /// Positive samples must parse.
    pub fn validate(&self) -> Result<(), DatasetError> {
        if !self.is_negative() {
            canonicalize(&self.oracle_text)?;
        }
        Ok(())
    }

    fn key(&self) -> (&str, &str, OracleType, &str, &str) {
        (&self.class_name, &self.method_signature, self.oracle_type, &self.tag_text, &self.oracle_text)
    }
}

/// One position of a positive oracle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct TokenSample {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub oracle: OracleSample,
    pub partial_oracle_text: String,
    pub legal_tokens: Vec<String>,
    pub next_token: String,
}

impl TokenSample {
    pub fn validate(&self) -> Result<(), DatasetError> {
        if !self.legal_tokens.contains(&self.next_token) {
            return Err(DatasetError::IllegalNextToken { token: self.next_token.clone(), partial: self.partial_oracle_text.clone() });
        }
        Ok(())
    }

    /// Tokens in the partial oracle.
    pub fn position(&self) -> Result<usize, DatasetError> {
        Ok(tokenize(&self.partial_oracle_text).map_err(OracleSyntaxError::from)?.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DatasetError {
    #[error(transparent)]
    Syntax(#[from] OracleSyntaxError),
    #[error(transparent)]
    Context(#[from] ContextError),
    #[error("negative samples have no tokens")]
    Negative,
    #[error("replay breach at token {position} `{token}`: {restriction}: {message}")]
    ReplayBreach { position: usize, token: String, restriction: &'static str, message: String },
    #[error("`{token}` is not among the legal tokens after {partial:?}")]
    IllegalNextToken { token: String, partial: String },
    #[error("no token samples")]
    Empty,
    #[error("token samples belong to different oracles")]
    IdentityMismatch,
    #[error("token samples do not cover positions 0..{expected}: {found:?}")]
    Gap { expected: usize, found: Vec<usize> },
}

/// One token sample per token of `sample`'s oracle, each carrying the
/// filtered candidate set for its prefix. Fails on the first true token the
/// filter rejects.
pub fn disaggregate(sample: &OracleSample, model: &ProjectModel) -> Result<Vec<TokenSample>, DatasetError> {
    if sample.is_negative() {
        return Err(DatasetError::Negative);
    }
    let ctx = sample.context(model)?;
    let engine = TokenEngine::new(&ctx);
    let tokens = tokenize(&sample.oracle_text).map_err(OracleSyntaxError::from)?;
    let mut oracle = sample.clone();
    oracle.oracle_text = canonicalize(&sample.oracle_text)?;
    let mut partial = PartialOracle::new();
    let mut out = Vec::with_capacity(tokens.len());
    for (i, tok) in tokens.into_iter().enumerate() {
        let breach = |restriction, message| DatasetError::ReplayBreach { position: i + 1, token: tok.text.clone(), restriction, message };
        let set = engine.candidates(&partial).map_err(|e| breach("grammar", e.to_string()))?;
        if !set.contains(&tok.text) {
            return Err(match engine.check_next(&partial, &tok) {
                Err(v) => breach(v.restriction, v.message),
                Ok(()) => breach("collection", "token is not collected in this context".to_string()),
            });
        }
        out.push(TokenSample {
            oracle: oracle.clone(),
            partial_oracle_text: partial.rendered_text(),
            legal_tokens: set.texts().into_iter().map(String::from).collect(),
            next_token: tok.text.clone(),
        });
        partial.tokens.push(tok);
    }
    Ok(out)
}

/// The oracle text the samples of one oracle spell out, in canonical form.
/// Input order does not matter.
pub fn reassemble(samples: &[TokenSample]) -> Result<String, DatasetError> {
    let first = samples.first().ok_or(DatasetError::Empty)?;
    if samples.iter().any(|s| s.oracle != first.oracle) {
        return Err(DatasetError::IdentityMismatch);
    }
    let mut slots: Vec<Option<&TokenSample>> = alloc::vec![None; samples.len()];
    let mut found = Vec::with_capacity(samples.len());
    for s in samples {
        let p = s.position()?;
        found.push(p);
        match slots.get_mut(p) {
            Some(slot @ None) => *slot = Some(s),
            _ => {
                found.sort_unstable();
                return Err(DatasetError::Gap { expected: samples.len(), found });
            }
        }
    }
    let mut tokens = Vec::with_capacity(samples.len());
    for s in slots.into_iter().flatten() {
        tokens.extend(tokenize(&s.next_token).map_err(OracleSyntaxError::from)?);
    }
    Ok(render_tokens(&tokens))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct TypeCounts {
    pub positive: usize,
    pub negative: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct DatasetStats {
    pub total: usize,
    pub positive: usize,
    pub negative: usize,
    pub by_type: BTreeMap<OracleType, TypeCounts>,
}

pub fn stats(samples: &[OracleSample]) -> DatasetStats {
    let mut s = DatasetStats { total: samples.len(), ..DatasetStats::default() };
    for x in samples {
        let c = s.by_type.entry(x.oracle_type).or_default();
        if x.is_negative() {
            s.negative += 1;
            c.negative += 1;
        } else {
            s.positive += 1;
            c.positive += 1;
        }
    }
    s
}

/// Pairs `(first, later)` of sample indices with the same method, oracle
/// type, tag, and oracle.
pub fn duplicates(samples: &[OracleSample]) -> Vec<(usize, usize)> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        if let Some(&j) = seen.get(&s.key()) {
            out.push((j, i));
        } else {
            seen.insert(s.key(), i);
        }
    }
    out
}
