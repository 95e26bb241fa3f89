use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use super::token::Token;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OracleAst {
    Plain(Prop),
    /// `cond ? then : otherwise;`
    Guarded { cond: Prop, then: Prop, otherwise: Prop },
}

/// Disjunction of conjunctions. Never empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prop {
    pub disjuncts: Vec<Conjunction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Conjunction {
    pub atoms: Vec<Atom>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Compare { left: Operand, op: RelOp, right: Arith },
    InstanceOf { operand: Operand, class: String },
    /// A boolean operand standing alone: a chain, a literal, or a
    /// parenthesized proposition.
    Operand(Operand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl RelOp {
    pub fn from_text(s: &str) -> Option<RelOp> {
        Some(match s {
            "==" => RelOp::Eq,
            "!=" => RelOp::Ne,
            "<" => RelOp::Lt,
            "<=" => RelOp::Le,
            ">" => RelOp::Gt,
            ">=" => RelOp::Ge,
            _ => return None,
        })
    }

    pub fn text(self) -> &'static str {
        match self {
            RelOp::Eq => "==",
            RelOp::Ne => "!=",
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
        }
    }

    pub fn is_equality(self) -> bool {
        matches!(self, RelOp::Eq | RelOp::Ne)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
}

impl ArithOp {
    pub fn from_text(s: &str) -> Option<ArithOp> {
        Some(match s {
            "+" => ArithOp::Add,
            "-" => ArithOp::Sub,
            "*" => ArithOp::Mul,
            "/" => ArithOp::Div,
            "%" => ArithOp::Rem,
            _ => return None,
        })
    }

    pub fn text(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
            ArithOp::Rem => "%",
        }
    }

    pub fn is_additive(self) -> bool {
        matches!(self, ArithOp::Add | ArithOp::Sub)
    }
}

/// `term (('+' | '-') term)*`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arith {
    pub first: Term,
    pub rest: Vec<(ArithOp, Term)>,
}

/// `operand (('*' | '/' | '%') operand)*`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub first: Operand,
    pub rest: Vec<(ArithOp, Operand)>,
}

impl Arith {
    pub fn single(operand: Operand) -> Arith {
        Arith { first: Term { first: operand, rest: Vec::new() }, rest: Vec::new() }
    }

    /// The operand when the expression has no operator.
    pub fn as_single(&self) -> Option<&Operand> {
        if self.rest.is_empty() && self.first.rest.is_empty() {
            Some(&self.first.first)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Operand {
    /// Literal token, including `true`, `false`, and `null`.
    Literal(Token),
    Paren(Box<Prop>),
    Chain(Chain),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    /// Identifier, `this`, `methodResultID`, or `jdVar`.
    pub base: String,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Field(String),
    /// Arguments are single tokens.
    Call { name: String, args: Vec<Token> },
    /// `.anyMatch(jdVar -> body)` and friends.
    Quantifier { name: String, body: Box<Prop> },
}

impl Prop {
    pub fn atom(atom: Atom) -> Prop {
        Prop { disjuncts: alloc::vec![Conjunction { atoms: alloc::vec![atom] }] }
    }
}
