use alloc::string::String;
use alloc::vec::Vec;

use super::ast::*;
use super::token::{render_tokens, Token, TokenKind};

/// Canonical text of an oracle.
pub fn render(ast: &OracleAst) -> String {
    render_tokens(&to_tokens(ast))
}

pub fn render_prop(prop: &Prop) -> String {
    let mut out = Vec::new();
    prop_tokens(prop, &mut out);
    render_tokens(&out)
}

pub fn render_operand(op: &Operand) -> String {
    let mut out = Vec::new();
    operand_tokens(op, &mut out);
    render_tokens(&out)
}

pub fn render_arith(a: &Arith) -> String {
    let mut out = Vec::new();
    arith_tokens(a, &mut out);
    render_tokens(&out)
}

/// Token sequence of an oracle, `;` included.
pub fn to_tokens(ast: &OracleAst) -> Vec<Token> {
    let mut out = Vec::new();
    match ast {
        OracleAst::Plain(p) => prop_tokens(p, &mut out),
        OracleAst::Guarded { cond, then, otherwise } => {
            prop_tokens(cond, &mut out);
            out.push(op("?"));
            prop_tokens(then, &mut out);
            out.push(op(":"));
            prop_tokens(otherwise, &mut out);
        }
    }
    out.push(punct(";"));
    out
}

fn op(s: &str) -> Token {
    Token::new(s, TokenKind::Operator)
}

fn punct(s: &str) -> Token {
    Token::new(s, TokenKind::Punctuation)
}

fn prop_tokens(p: &Prop, out: &mut Vec<Token>) {
    for (i, c) in p.disjuncts.iter().enumerate() {
        if i > 0 {
            out.push(op("||"));
        }
        for (j, a) in c.atoms.iter().enumerate() {
            if j > 0 {
                out.push(op("&&"));
            }
            atom_tokens(a, out);
        }
    }
}

fn atom_tokens(a: &Atom, out: &mut Vec<Token>) {
    match a {
        Atom::Compare { left, op: rel, right } => {
            operand_tokens(left, out);
            out.push(op(rel.text()));
            arith_tokens(right, out);
        }
        Atom::InstanceOf { operand, class } => {
            operand_tokens(operand, out);
            out.push(op("instanceof"));
            out.push(Token::new(class.as_str(), TokenKind::Identifier));
        }
        Atom::Operand(o) => operand_tokens(o, out),
    }
}

fn arith_tokens(a: &Arith, out: &mut Vec<Token>) {
    term_tokens(&a.first, out);
    for (o, t) in &a.rest {
        out.push(op(o.text()));
        term_tokens(t, out);
    }
}

fn term_tokens(t: &Term, out: &mut Vec<Token>) {
    operand_tokens(&t.first, out);
    for (o, x) in &t.rest {
        out.push(op(o.text()));
        operand_tokens(x, out);
    }
}

fn operand_tokens(o: &Operand, out: &mut Vec<Token>) {
    match o {
        Operand::Literal(t) => out.push(t.clone()),
        Operand::Paren(p) => {
            out.push(punct("("));
            prop_tokens(p, out);
            out.push(punct(")"));
        }
        Operand::Chain(c) => {
            let kind = if matches!(c.base.as_str(), "this" | "methodResultID" | "jdVar") {
                TokenKind::Reserved
            } else {
                TokenKind::Identifier
            };
            out.push(Token::new(c.base.as_str(), kind));
            for s in &c.steps {
                out.push(punct("."));
                match s {
                    Step::Field(n) => out.push(Token::new(n.as_str(), TokenKind::MemberName)),
                    Step::Call { name, args } => {
                        out.push(Token::new(name.as_str(), TokenKind::MethodCallName));
                        out.push(punct("("));
                        for (i, a) in args.iter().enumerate() {
                            if i > 0 {
                                out.push(punct(","));
                            }
                            out.push(a.clone());
                        }
                        out.push(punct(")"));
                    }
                    Step::Quantifier { name, body } => {
                        out.push(Token::new(name.as_str(), TokenKind::MethodCallName));
                        out.push(punct("("));
                        out.push(Token::new("jdVar", TokenKind::Reserved));
                        out.push(op("->"));
                        prop_tokens(body, out);
                        out.push(punct(")"));
                    }
                }
            }
        }
    }
}
