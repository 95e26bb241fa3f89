use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::grammar::{LiteralKind, Token, TokenKind};
use crate::model::{TypeCategory, TypeRef};

pub(crate) const OBJECT: &str = "java.lang.Object";
pub(crate) const STRING: &str = "java.lang.String";
pub(crate) const STREAM: &str = "java.util.stream.Stream";

/// Static type of an oracle expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExprType {
    NumericIntegral,
    NumericFloating,
    Boolean,
    Char,
    Reference(String),
    Array(Box<ExprType>),
    Void,
    Unknown,
    /// A parenthesized proposition.
    BooleanProposition,
    /// A class name used as a receiver of static members.
    StaticClass(String),
    /// Result of a stream opener; only quantifiers apply.
    Stream(Box<ExprType>),
    Null,
}

impl ExprType {
    pub fn from_type_ref(t: &TypeRef) -> ExprType {
        match &t.category {
            TypeCategory::NumericIntegral => ExprType::NumericIntegral,
            TypeCategory::NumericFloating => ExprType::NumericFloating,
            TypeCategory::Boolean => ExprType::Boolean,
            TypeCategory::Char => ExprType::Char,
            TypeCategory::Reference => ExprType::Reference(t.name.clone()),
            TypeCategory::Array(e) => ExprType::Array(Box::new(ExprType::from_type_ref(e))),
            TypeCategory::Void => ExprType::Void,
            TypeCategory::Unknown => ExprType::Unknown,
        }
    }

    pub fn of_literal(t: &Token) -> Option<ExprType> {
        Some(match (&t.kind, t.text.as_str()) {
            (TokenKind::Reserved, "true" | "false") => ExprType::Boolean,
            (TokenKind::Reserved, "null") => ExprType::Null,
            (TokenKind::Literal(LiteralKind::Integer), _) => ExprType::NumericIntegral,
            (TokenKind::Literal(LiteralKind::Floating), _) => ExprType::NumericFloating,
            (TokenKind::Literal(LiteralKind::Char), _) => ExprType::Char,
            (TokenKind::Literal(LiteralKind::String), _) => ExprType::Reference(STRING.into()),
            _ => return None,
        })
    }

    /// Char counts: Java promotes it in arithmetic and comparisons.
    pub fn is_numeric(&self) -> bool {
        matches!(self, ExprType::NumericIntegral | ExprType::NumericFloating | ExprType::Char)
    }

    pub fn is_boolean(&self) -> bool {
        matches!(self, ExprType::Boolean | ExprType::BooleanProposition)
    }

    pub fn is_reference_like(&self) -> bool {
        matches!(self, ExprType::Reference(_) | ExprType::Array(_))
    }

    /// Whether an operand of this type may end where it is.
    pub fn can_complete(&self) -> bool {
        !matches!(self, ExprType::StaticClass(_) | ExprType::Stream(_) | ExprType::Void)
    }

    pub fn element(&self) -> Option<&ExprType> {
        match self {
            ExprType::Array(e) | ExprType::Stream(e) => Some(e),
            _ => None,
        }
    }
}

impl fmt::Display for ExprType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprType::NumericIntegral => f.write_str("numeric-integral"),
            ExprType::NumericFloating => f.write_str("numeric-floating"),
            ExprType::Boolean => f.write_str("boolean"),
            ExprType::Char => f.write_str("char"),
            ExprType::Reference(n) => write!(f, "reference({n})"),
            ExprType::Array(e) => write!(f, "array({e})"),
            ExprType::Void => f.write_str("void"),
            ExprType::Unknown => f.write_str("unknown"),
            ExprType::BooleanProposition => f.write_str("boolean-proposition"),
            ExprType::StaticClass(n) => write!(f, "class({n})"),
            ExprType::Stream(e) => write!(f, "stream({e})"),
            ExprType::Null => f.write_str("null"),
        }
    }
}

/// What the right-hand side of a comparison (or an arithmetic factor) must
/// evaluate to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Req {
    Numeric,
    Boolean,
    /// `null` or a reference type related to the given one.
    RefRelated(ExprType),
    NullOnly,
}

/// Completion target of an operand frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Goal {
    /// Left operand: completes the atom, either bare (boolean) or through a
    /// short comparison.
    LeftTail,
    Req(Req),
}

/// Tokens needed after a complete left operand of type `t` to close its atom.
pub(crate) fn left_tail_cost(t: &ExprType) -> Option<usize> {
    match t {
        ExprType::Boolean | ExprType::BooleanProposition => Some(0),
        // `>= 0`, `!= null`, `== null`
        ExprType::NumericIntegral | ExprType::NumericFloating | ExprType::Char => Some(2),
        ExprType::Reference(_) | ExprType::Array(_) | ExprType::Unknown => Some(2),
        _ => None,
    }
}
