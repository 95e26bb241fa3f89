//! Recursive-descent parser. Independent of the automaton so the two can be
//! cross-checked.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::ast::*;
use super::token::{Token, TokenKind, QUANTIFIERS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    /// Index of the offending token; equals the token count at end of input.
    pub index: usize,
    pub found: Option<String>,
    pub expected: &'static str,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.found {
            Some(t) => write!(f, "syntax error at token {} (`{t}`): expected {}", self.index, self.expected),
            None => write!(f, "syntax error at end of input (token {}): expected {}", self.index, self.expected),
        }
    }
}

impl core::error::Error for SyntaxError {}

pub fn parse(tokens: &[Token]) -> Result<OracleAst, SyntaxError> {
    let mut p = Parser { toks: tokens, pos: 0 };
    let cond = p.prop()?;
    let ast = if p.eat("?") {
        let then = p.prop()?;
        p.expect(":", "`:`")?;
        let otherwise = p.prop()?;
        OracleAst::Guarded { cond, then, otherwise }
    } else {
        OracleAst::Plain(cond)
    };
    p.expect(";", "`;`, `&&`, `||`, or `?`")?;
    p.end()?;
    Ok(ast)
}

/// Parses a complete operand spanning all of `tokens`.
pub fn parse_operand(tokens: &[Token]) -> Result<Operand, SyntaxError> {
    let mut p = Parser { toks: tokens, pos: 0 };
    let o = p.operand()?;
    p.end()?;
    Ok(o)
}

/// Parses an arithmetic expression spanning all of `tokens`.
pub fn parse_arith(tokens: &[Token]) -> Result<Arith, SyntaxError> {
    let mut p = Parser { toks: tokens, pos: 0 };
    let a = p.arith()?;
    p.end()?;
    Ok(a)
}

/// Parses a proposition spanning all of `tokens`.
pub fn parse_prop(tokens: &[Token]) -> Result<Prop, SyntaxError> {
    let mut p = Parser { toks: tokens, pos: 0 };
    let a = p.prop()?;
    p.end()?;
    Ok(a)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_is(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.is(text))
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.peek_is(text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &'static str) -> SyntaxError {
        SyntaxError { index: self.pos, found: self.peek().map(|t| t.text.clone()), expected }
    }

    fn expect(&mut self, text: &str, expected: &'static str) -> Result<(), SyntaxError> {
        if self.eat(text) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn end(&self) -> Result<(), SyntaxError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn prop(&mut self) -> Result<Prop, SyntaxError> {
        let mut disjuncts = alloc::vec![self.conjunction()?];
        while self.eat("||") {
            disjuncts.push(self.conjunction()?);
        }
        Ok(Prop { disjuncts })
    }

    fn conjunction(&mut self) -> Result<Conjunction, SyntaxError> {
        let mut atoms = alloc::vec![self.atom()?];
        while self.eat("&&") {
            atoms.push(self.atom()?);
        }
        Ok(Conjunction { atoms })
    }

    fn atom(&mut self) -> Result<Atom, SyntaxError> {
        let left = self.operand()?;
        if let Some(op) = self.peek().and_then(|t| RelOp::from_text(&t.text)) {
            self.pos += 1;
            let right = self.arith()?;
            return Ok(Atom::Compare { left, op, right });
        }
        if self.eat("instanceof") {
            return match self.peek() {
                Some(t) if t.kind == TokenKind::Identifier => {
                    let class = t.text.clone();
                    self.pos += 1;
                    Ok(Atom::InstanceOf { operand: left, class })
                }
                _ => Err(self.error("class name")),
            };
        }
        Ok(Atom::Operand(left))
    }

    fn arith(&mut self) -> Result<Arith, SyntaxError> {
        let first = self.term()?;
        let mut rest = Vec::new();
        while let Some(op) = self.peek().and_then(|t| ArithOp::from_text(&t.text)).filter(|o| o.is_additive()) {
            self.pos += 1;
            rest.push((op, self.term()?));
        }
        Ok(Arith { first, rest })
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let first = self.operand()?;
        let mut rest = Vec::new();
        while let Some(op) = self.peek().and_then(|t| ArithOp::from_text(&t.text)).filter(|o| !o.is_additive()) {
            self.pos += 1;
            rest.push((op, self.operand()?));
        }
        Ok(Term { first, rest })
    }

    fn operand(&mut self) -> Result<Operand, SyntaxError> {
        let Some(t) = self.peek() else { return Err(self.error("operand")) };
        if t.is_literal() {
            let t = t.clone();
            self.pos += 1;
            return Ok(Operand::Literal(t));
        }
        if t.is("(") {
            self.pos += 1;
            let inner = self.prop()?;
            self.expect(")", "`)`")?;
            return Ok(Operand::Paren(Box::new(inner)));
        }
        let is_base = t.kind == TokenKind::Identifier
            || (t.kind == TokenKind::Reserved && matches!(t.text.as_str(), "this" | "methodResultID" | "jdVar"));
        if !is_base {
            return Err(self.error("operand"));
        }
        let base = t.text.clone();
        self.pos += 1;
        let mut steps = Vec::new();
        while self.eat(".") {
            let name = match self.peek() {
                Some(t) if t.is_word() => t.text.clone(),
                _ => return Err(self.error("member name")),
            };
            self.pos += 1;
            if QUANTIFIERS.contains(&name.as_str()) {
                self.expect("(", "`(`")?;
                self.expect("jdVar", "`jdVar`")?;
                self.expect("->", "`->`")?;
                let body = self.prop()?;
                self.expect(")", "`)`")?;
                steps.push(Step::Quantifier { name, body: Box::new(body) });
            } else if self.eat("(") {
                let mut args = Vec::new();
                if !self.eat(")") {
                    loop {
                        match self.peek() {
                            Some(t) if t.is_word() || t.is_literal() || t.kind == TokenKind::Reserved => {
                                args.push(t.clone());
                                self.pos += 1;
                            }
                            _ => return Err(self.error("argument")),
                        }
                        if self.eat(")") {
                            break;
                        }
                        self.expect(",", "`,` or `)`")?;
                    }
                }
                steps.push(Step::Call { name, args });
            } else {
                steps.push(Step::Field(name));
            }
        }
        Ok(Operand::Chain(Chain { base, steps }))
    }
}
