use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use crate::model::{parse_doc_comment, ClassInfo, DocTag, DocTagKind, MethodInfo, ProjectModel};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum OracleType {
    #[cfg_attr(feature = "serde", serde(rename = "PRE"))]
    Pre,
    #[cfg_attr(feature = "serde", serde(rename = "NORMAL_POST"))]
    NormalPost,
    #[cfg_attr(feature = "serde", serde(rename = "EXCEPT_POST"))]
    ExceptPost,
}

impl OracleType {
    pub const ALL: [OracleType; 3] = [OracleType::Pre, OracleType::NormalPost, OracleType::ExceptPost];

    pub fn as_str(self) -> &'static str {
        match self {
            OracleType::Pre => "PRE",
            OracleType::NormalPost => "NORMAL_POST",
            OracleType::ExceptPost => "EXCEPT_POST",
        }
    }

    pub fn parse(s: &str) -> Option<OracleType> {
        OracleType::ALL.into_iter().find(|t| t.as_str() == s)
    }

    /// Label used in prompts.
    pub fn display_name(self) -> &'static str {
        match self {
            OracleType::Pre => "Precondition",
            OracleType::NormalPost => "Normal postcondition",
            OracleType::ExceptPost => "Exceptional postcondition",
        }
    }

    /// The block tag kind this oracle type is generated from.
    pub fn tag_kind(self) -> DocTagKind {
        match self {
            OracleType::Pre => DocTagKind::Param,
            OracleType::NormalPost => DocTagKind::Return,
            OracleType::ExceptPost => DocTagKind::Throws,
        }
    }
}

impl fmt::Display for OracleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ContextError {
    #[error("class `{0}` not found")]
    UnknownClass(String),
    #[error("method `{signature}` not found in `{class}`")]
    UnknownMethod { class: String, signature: String },
    #[error("normal postcondition requested for `{0}`, which returns void")]
    VoidPostcondition(String),
    #[error("{kind:?} tag cannot drive a {oracle_type} oracle")]
    TagMismatch { kind: DocTagKind, oracle_type: OracleType },
}

/// Everything the collector, filter, and prompts need about one oracle
/// attempt.
#[derive(Clone, Debug)]
pub struct GenerationContext<'m> {
    pub model: &'m ProjectModel,
    pub class: &'m ClassInfo,
    pub unit: &'m MethodInfo,
    pub oracle_type: OracleType,
    /// `None` for a free-text attempt with no tag.
    pub tag: Option<DocTag>,
    /// Exception named by the `@throws` tag of an exceptional postcondition.
    pub exception_type: Option<String>,
}

impl<'m> GenerationContext<'m> {
    pub fn new(
        model: &'m ProjectModel,
        class: &'m ClassInfo,
        unit: &'m MethodInfo,
        oracle_type: OracleType,
        tag: Option<DocTag>,
    ) -> Result<Self, ContextError> {
        if oracle_type == OracleType::NormalPost && unit.return_type.is_void() {
            return Err(ContextError::VoidPostcondition(unit.signature_text.clone()));
        }
        if let Some(t) = &tag {
            if t.kind != DocTagKind::FreeText && t.kind != oracle_type.tag_kind() {
                return Err(ContextError::TagMismatch { kind: t.kind, oracle_type });
            }
        }
        let exception_type = match (&tag, oracle_type) {
            (Some(t), OracleType::ExceptPost) if t.kind == DocTagKind::Throws => Some(t.target.clone()),
            _ => None,
        };
        Ok(GenerationContext { model, class, unit, oracle_type, tag, exception_type })
    }

    /// Looks the method up by class and signature text, and the tag by its
    /// rendered text (empty for free text).
    pub fn lookup(
        model: &'m ProjectModel,
        class_name: &str,
        signature: &str,
        oracle_type: OracleType,
        tag_text: &str,
    ) -> Result<Self, ContextError> {
        let (class, unit) = model.find_method(class_name, signature).ok_or_else(|| {
            if model.find_class(class_name).is_none() {
                ContextError::UnknownClass(class_name.to_string())
            } else {
                ContextError::UnknownMethod { class: class_name.to_string(), signature: signature.to_string() }
            }
        })?;
        let tag = tag_from_text(unit, tag_text);
        GenerationContext::new(model, class, unit, oracle_type, tag)
    }

    /// The tag as rendered into prompts and datasets.
    pub fn tag_text(&self) -> String {
        self.tag.as_ref().map(DocTag::render).unwrap_or_default()
    }

    /// Stable identity used to order logs: `Class#signature#TYPE#tag`.
    pub fn id(&self) -> String {
        format!("{}#{}#{}#{}", self.class.qualified_name, self.unit.signature_text, self.oracle_type, self.tag_text())
    }
}

/// Finds the method's tag whose rendering equals `text`; text that matches
/// no tag is parsed on its own.
pub fn tag_from_text(unit: &MethodInfo, text: &str) -> Option<DocTag> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some(t) = unit.tags.iter().find(|t| t.render() == text) {
        return Some(t.clone());
    }
    if text.starts_with('@') {
        let doc = parse_doc_comment(&format!("/** {text} */"));
        if let Some(t) = doc.tags.into_iter().next() {
            return Some(t);
        }
    }
    Some(DocTag { kind: DocTagKind::FreeText, target: String::new(), text: text.to_string(), dangling: false })
}
