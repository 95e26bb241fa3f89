use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

pub const RESERVED: &[&str] = &["true", "false", "null", "this", "methodResultID", "jdVar"];

pub const OPERATORS: &[&str] = &[
    "==", "!=", "<", "<=", ">", ">=", "&&", "||", "+", "-", "*", "/", "%", "instanceof", "?", ":", "->",
];

pub const PUNCTUATION: &[&str] = &["(", ")", ".", ",", ";"];

pub const RELATIONAL: &[&str] = &["==", "!=", "<", "<=", ">", ">="];

pub const QUANTIFIERS: &[&str] = &["anyMatch", "allMatch", "noneMatch"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum LiteralKind {
    Integer,
    Floating,
    String,
    Char,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum TokenKind {
    Identifier,
    MemberName,
    MethodCallName,
    Reserved,
    Operator,
    Punctuation,
    Literal(LiteralKind),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Token {
    pub text: String,
    pub kind: TokenKind,
}

impl Token {
    pub fn new(text: impl Into<String>, kind: TokenKind) -> Token {
        Token { text: text.into(), kind }
    }

    /// Classifies a standalone lexeme. Words become identifiers (or reserved
    /// words); member names are only recognized in context by [`tokenize`].
    pub fn from_text(text: &str) -> Option<Token> {
        let toks = tokenize(text).ok()?;
        match toks.as_slice() {
            [t] if t.text == text => Some(t.clone()),
            _ => None,
        }
    }

    pub fn is(&self, text: &str) -> bool {
        self.text == text
    }

    pub fn is_word(&self) -> bool {
        matches!(self.kind, TokenKind::Identifier | TokenKind::MemberName | TokenKind::MethodCallName)
    }

    /// `true`, `false`, `null`, or a literal token.
    pub fn is_literal(&self) -> bool {
        matches!(self.kind, TokenKind::Literal(_))
            || (self.kind == TokenKind::Reserved && matches!(self.text.as_str(), "true" | "false" | "null"))
    }

    pub fn is_binary_operator(&self) -> bool {
        self.kind == TokenKind::Operator
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("lexical error at offset {offset}: unexpected {found:?}")]
pub struct LexError {
    /// Byte offset into the input.
    pub offset: usize,
    pub found: char,
}

/// Splits oracle text into tokens. `-` directly followed by a digit lexes as
/// part of a negative literal when it cannot be a binary minus.
pub fn tokenize(text: &str) -> Result<Vec<Token>, LexError> {
    let bytes = text.as_bytes();
    let mut out: Vec<Token> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let ch = text[i..].chars().next().expect("in bounds");
        let operand_may_start = out.last().is_none_or(|t| {
            t.kind == TokenKind::Operator || t.is("(") || t.is(",")
        });
        if c.is_ascii_digit() || (c == b'-' && operand_may_start && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            i = scan_number(bytes, i);
            let lit = &text[start..i];
            out.push(Token::new(lit, TokenKind::Literal(number_kind(lit))));
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' || ch == '$' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'$') {
                i += 1;
            }
            let word = &text[start..i];
            let after_dot = out.last().is_some_and(|t| t.is("."));
            let kind = if word == "instanceof" {
                TokenKind::Operator
            } else if RESERVED.contains(&word) {
                TokenKind::Reserved
            } else if after_dot {
                if next_non_space(bytes, i) == Some(b'(') {
                    TokenKind::MethodCallName
                } else {
                    TokenKind::MemberName
                }
            } else {
                TokenKind::Identifier
            };
            out.push(Token::new(word, kind));
            continue;
        }
        if c == b'"' || c == b'\'' {
            i += 1;
            loop {
                match bytes.get(i) {
                    None | Some(b'\n') => return Err(LexError { offset: start, found: ch }),
                    Some(b'\\') => i += 2,
                    Some(&b) if b == c => {
                        i += 1;
                        break;
                    }
                    Some(_) => i += 1,
                }
            }
            let kind = if c == b'"' { LiteralKind::String } else { LiteralKind::Char };
            out.push(Token::new(&text[start..i], TokenKind::Literal(kind)));
            continue;
        }
        let two = text.get(i..i + 2).unwrap_or("");
        if let Some(op) = OPERATORS.iter().find(|op| op.len() == 2 && **op == two) {
            out.push(Token::new(*op, TokenKind::Operator));
            i += 2;
            continue;
        }
        let one = &text[i..i + ch.len_utf8()];
        if let Some(op) = OPERATORS.iter().find(|op| op.len() == 1 && **op == one) {
            out.push(Token::new(*op, TokenKind::Operator));
            i += 1;
            continue;
        }
        if let Some(p) = PUNCTUATION.iter().find(|p| **p == one) {
            out.push(Token::new(*p, TokenKind::Punctuation));
            i += 1;
            continue;
        }
        return Err(LexError { offset: start, found: ch });
    }
    Ok(out)
}

fn next_non_space(bytes: &[u8], mut i: usize) -> Option<u8> {
    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
        i += 1;
    }
    bytes.get(i).copied()
}

fn scan_number(bytes: &[u8], mut i: usize) -> usize {
    if bytes[i] == b'-' {
        i += 1;
    }
    if bytes[i] == b'0' && matches!(bytes.get(i + 1), Some(b'x' | b'X')) {
        i += 2;
        while i < bytes.len() && (bytes[i].is_ascii_hexdigit() || bytes[i] == b'_') {
            i += 1;
        }
    } else {
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'_') {
            i += 1;
        }
        if bytes.get(i) == Some(&b'.') && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        if matches!(bytes.get(i), Some(b'e' | b'E')) {
            let mut j = i + 1;
            if matches!(bytes.get(j), Some(b'+' | b'-')) {
                j += 1;
            }
            if bytes.get(j).is_some_and(u8::is_ascii_digit) {
                i = j;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
        }
    }
    if matches!(bytes.get(i), Some(b'l' | b'L' | b'f' | b'F' | b'd' | b'D')) {
        i += 1;
    }
    i
}

fn number_kind(lit: &str) -> LiteralKind {
    let body = lit.trim_start_matches('-');
    let hex = body.starts_with("0x") || body.starts_with("0X");
    if !hex && (body.contains(['.', 'e', 'E']) || body.ends_with(['f', 'F', 'd', 'D'])) {
        LiteralKind::Floating
    } else {
        LiteralKind::Integer
    }
}

/// Canonical spacing: one space around binary operators and after commas,
/// nothing else.
pub fn render_tokens<'a>(tokens: impl IntoIterator<Item = &'a Token>) -> String {
    let mut out = String::new();
    let mut prev: Option<&Token> = None;
    for t in tokens {
        if let Some(p) = prev {
            if t.is_binary_operator() || p.is_binary_operator() || p.is(",") {
                out.push(' ');
            }
        }
        out.push_str(&t.text);
        prev = Some(t);
    }
    out
}
