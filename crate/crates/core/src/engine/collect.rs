//! Candidate token collection.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::types::ExprType;
use super::typing::Typer;
use crate::grammar::{LiteralKind, Token, TokenKind, OPERATORS, PUNCTUATION, QUANTIFIERS};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Where a candidate token came from. Also the first ordering key of a
/// candidate set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Provenance {
    Common,
    Project,
    Method,
    SpecificMember,
    DocLiteral,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Common => "common",
            Provenance::Project => "project",
            Provenance::Method => "method",
            Provenance::SpecificMember => "specific-member",
            Provenance::DocLiteral => "doc-literal",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Candidate {
    pub token: Token,
    pub provenance: Provenance,
}

/// Collects candidates in order, dropping repeated texts.
#[derive(Default)]
pub(crate) struct Collector {
    out: Vec<Candidate>,
    seen: BTreeSet<String>,
}

impl Collector {
    pub fn push(&mut self, token: Token, provenance: Provenance) {
        if self.seen.insert(token.text.clone()) {
            self.out.push(Candidate { token, provenance });
        }
    }

    pub fn finish(self) -> Vec<Candidate> {
        self.out
    }
}

fn common(c: &mut Collector) {
    for p in PUNCTUATION {
        c.push(Token::new(*p, TokenKind::Punctuation), Provenance::Common);
    }
    for o in OPERATORS {
        c.push(Token::new(*o, TokenKind::Operator), Provenance::Common);
    }
    for r in ["true", "false", "null", "jdVar"] {
        c.push(Token::new(r, TokenKind::Reserved), Provenance::Common);
    }
    for n in ["0", "1"] {
        c.push(Token::new(n, TokenKind::Literal(LiteralKind::Integer)), Provenance::Common);
    }
}

/// Instance member names of `ty`, fields first.
pub(crate) fn member_tokens(typer: &Typer<'_, '_>, ty: &ExprType, provenance: Provenance, c: &mut Collector) {
    if let ExprType::Stream(_) = ty {
        for q in QUANTIFIERS {
            c.push(Token::new(*q, TokenKind::MethodCallName), provenance);
        }
        return;
    }
    let Some((set, statics)) = typer.members_of(ty) else { return };
    for f in set.fields.iter().filter(|f| f.is_static == statics) {
        c.push(Token::new(f.name.as_str(), TokenKind::MemberName), provenance);
    }
    for m in set.methods.iter().filter(|m| m.is_static == statics) {
        c.push(Token::new(m.name.as_str(), TokenKind::MethodCallName), provenance);
    }
}

pub(crate) fn collect_generic(typer: &Typer<'_, '_>) -> Vec<Candidate> {
    let mut c = Collector::default();
    common(&mut c);
    let scope = &typer.scope;
    for simple in &scope.class_order {
        c.push(Token::new(simple.as_str(), TokenKind::Identifier), Provenance::Project);
        let q = &scope.classes[simple];
        member_tokens(typer, &ExprType::StaticClass(q.clone()), Provenance::Project, &mut c);
    }
    for (name, _) in &scope.params {
        c.push(Token::new(name.as_str(), TokenKind::Identifier), Provenance::Method);
    }
    if scope.this_ty.is_some() {
        c.push(Token::new("this", TokenKind::Reserved), Provenance::Method);
    }
    if scope.result_ty.is_some() {
        c.push(Token::new("methodResultID", TokenKind::Reserved), Provenance::Method);
    }
    for (_, ty) in scope.identifiers(None) {
        member_tokens(typer, ty, Provenance::Method, &mut c);
    }
    if let Some(tag) = &typer.ctx.tag {
        for lit in mine_literals(&tag.text) {
            c.push(lit, Provenance::DocLiteral);
        }
    }
    c.finish()
}

/// Integer, floating, and double-quoted string literals appearing in prose,
/// in order of appearance. A `-` directly before a digit is kept when it
/// does not follow a word character.
pub fn mine_literals(text: &str) -> Vec<Token> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let word = |c: u8| c.is_ascii_alphanumeric() || c == b'_';
    while i < b.len() {
        let c = b[i];
        if c == b'"' {
            if let Some(len) = text[i + 1..].find('"') {
                let lit = &text[i..i + len + 2];
                if !lit[1..lit.len() - 1].contains('\\') {
                    out.push(Token::new(lit, TokenKind::Literal(LiteralKind::String)));
                }
                i += len + 2;
                continue;
            }
            break;
        }
        let neg = c == b'-' && i + 1 < b.len() && b[i + 1].is_ascii_digit() && (i == 0 || !word(b[i - 1]));
        if (c.is_ascii_digit() && (i == 0 || !word(b[i - 1]) && b[i - 1] != b'.' && b[i - 1] != b'-')) || neg {
            let start = i;
            i += 1;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let mut kind = LiteralKind::Integer;
            if i + 1 < b.len() && b[i] == b'.' && b[i + 1].is_ascii_digit() {
                kind = LiteralKind::Floating;
                i += 1;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < b.len() && (word(b[i]) || b[i] == b'.' && i + 1 < b.len() && b[i + 1].is_ascii_digit()) {
                while i < b.len() && (word(b[i]) || b[i] == b'.') {
                    i += 1;
                }
                continue;
            }
            out.push(Token::new(&text[start..i], TokenKind::Literal(kind)));
            continue;
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn texts(s: &str) -> Vec<String> {
        mine_literals(s).into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn mines_numbers_and_strings() {
        assert_eq!(texts("returns -1 if absent"), vec!["-1"]);
        assert_eq!(texts("between 0.5 and 2, e.g. \"abc\"."), vec!["0.5", "2", "\"abc\""]);
        assert_eq!(texts("the series index (zero based)."), Vec::<String>::new());
    }

    #[test]
    fn skips_numbers_inside_words() {
        assert_eq!(texts("Base64 and utf-8 and x2"), Vec::<String>::new());
        assert_eq!(texts("version 1.2.3"), Vec::<String>::new());
        assert_eq!(texts("is 5."), vec!["5"]);
    }
}
