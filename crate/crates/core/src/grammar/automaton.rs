//! Incremental recognizer for oracle prefixes.
//!
//! The state is an explicit stack of frames, expanded eagerly: whenever a
//! construct begins, the frames for its first sub-construct are pushed at
//! once, so the top frame always names what the next token may start.
//! Frames remember the index of their first token, which lets the token
//! engine type the text each frame covers.

use alloc::vec::Vec;
use core::fmt;

use super::token::{Token, TokenKind, QUANTIFIERS, RELATIONAL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// Left operand of an atom (or the whole atom when it stands alone).
    Left,
    /// First operand of the right-hand side of a comparison.
    Right,
    /// Operand following an arithmetic operator.
    Factor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PropContext {
    Top,
    Paren,
    Lambda,
    Branch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleStage {
    /// First proposition running or finished.
    Cond,
    Then,
    Else,
    Done,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomStage {
    AfterLeft,
    ExpectClass,
    /// `op` is the index of the comparison operator token.
    AfterRight { op: usize },
    Done,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperandStage {
    Start,
    /// Inside `( Prop`, waiting for `)`.
    AwaitClose,
    /// Literal or closed parenthesis.
    Closed,
    /// Complete access chain; may continue with `.`.
    Chain,
    ExpectMember,
    /// Member word read; a call may follow.
    MemberWord,
    /// Quantifier word read; `(` must follow.
    QuantifierWord,
    InCall,
    InLambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArgsStage {
    Open,
    AfterArg,
    ExpectArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambdaStage {
    ExpectVar,
    ExpectArrow,
    AfterBody,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Frame {
    Oracle(OracleStage),
    Prop { ctx: PropContext, start: usize },
    Atom { stage: AtomStage, start: usize },
    Arith { start: usize, has_op: bool },
    Operand { role: Role, stage: OperandStage, start: usize },
    /// `open` is the index of the `(` token.
    Args { stage: ArgsStage, count: usize, open: usize },
    Lambda { stage: LambdaStage, open: usize },
}

/// What the next token may be, before any typing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expected {
    /// A literal or a chain base word (identifier, `this`, `methodResultID`,
    /// `jdVar`) starting an operand in the given role.
    OperandStart(Role),
    /// A member or method name after `.`.
    Member,
    /// A class name after `instanceof`.
    ClassName,
    /// A single-token call argument.
    Argument,
    /// The bound variable `jdVar`.
    BoundVariable,
    /// A fixed operator or punctuation token.
    Symbol(&'static str),
}

impl Expected {
    pub fn accepts(&self, t: &Token) -> bool {
        match self {
            Expected::OperandStart(_) => t.is_literal() || is_base_word(t),
            Expected::Member => t.is_word(),
            Expected::ClassName => t.kind == TokenKind::Identifier,
            Expected::Argument => t.is_literal() || t.is_word() || t.kind == TokenKind::Reserved,
            Expected::BoundVariable => t.is("jdVar"),
            Expected::Symbol(s) => t.is(s) && matches!(t.kind, TokenKind::Operator | TokenKind::Punctuation),
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::OperandStart(_) => f.write_str("operand"),
            Expected::Member => f.write_str("member name"),
            Expected::ClassName => f.write_str("class name"),
            Expected::Argument => f.write_str("argument"),
            Expected::BoundVariable => f.write_str("`jdVar`"),
            Expected::Symbol(s) => write!(f, "`{s}`"),
        }
    }
}

pub fn is_base_word(t: &Token) -> bool {
    t.kind == TokenKind::Identifier
        || (t.kind == TokenKind::Reserved && matches!(t.text.as_str(), "this" | "methodResultID" | "jdVar"))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("token `{token}` at position {index} is not legal here")]
pub struct AdvanceError {
    pub index: usize,
    pub token: alloc::string::String,
}

/// How a token would be absorbed: `pops` completable frames are closed, then
/// the frame below them consumes the token as `expected`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Plan {
    pub pops: usize,
    pub expected: Expected,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrammarState {
    frames: Vec<Frame>,
    consumed: usize,
}

impl Default for GrammarState {
    fn default() -> Self {
        GrammarState::initial()
    }
}

const ARITH_OPS: &[&str] = &["+", "-", "*", "/", "%"];

impl GrammarState {
    pub fn initial() -> GrammarState {
        let mut s = GrammarState { frames: alloc::vec![Frame::Oracle(OracleStage::Cond)], consumed: 0 };
        s.open_prop(PropContext::Top, 0);
        s
    }

    /// Frames from bottom (the oracle) to top.
    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    /// Number of tokens consumed so far.
    pub fn len(&self) -> usize {
        self.consumed
    }

    pub fn is_empty(&self) -> bool {
        self.consumed == 0
    }

    /// The final `;` has been consumed.
    pub fn is_complete(&self) -> bool {
        self.frames == [Frame::Oracle(OracleStage::Done)]
    }

    fn open_prop(&mut self, ctx: PropContext, start: usize) {
        self.frames.push(Frame::Prop { ctx, start });
        self.open_atom(start);
    }

    fn open_atom(&mut self, start: usize) {
        self.frames.push(Frame::Atom { stage: AtomStage::AfterLeft, start });
        self.frames.push(Frame::Operand { role: Role::Left, stage: OperandStage::Start, start });
    }

    /// Token classes legal next, top frame first.
    pub fn legal_next(&self) -> Vec<Expected> {
        let mut out = Vec::new();
        for f in self.frames.iter().rev() {
            expected_of(f, &mut out);
            if !completable(f) {
                break;
            }
        }
        out
    }

    /// Resolves which frame would consume `t` without changing the state.
    pub fn plan(&self, t: &Token) -> Option<Plan> {
        for (pops, f) in self.frames.iter().rev().enumerate() {
            let mut exp = Vec::new();
            expected_of(f, &mut exp);
            if let Some(e) = exp.into_iter().find(|e| e.accepts(t)) {
                return Some(Plan { pops, expected: e });
            }
            if !completable(f) {
                return None;
            }
        }
        None
    }

    pub fn advance(&self, t: &Token) -> Result<GrammarState, AdvanceError> {
        let mut s = self.clone();
        s.push(t)?;
        Ok(s)
    }

    /// In-place [`advance`](Self::advance).
    pub fn push(&mut self, t: &Token) -> Result<(), AdvanceError> {
        let plan = self.plan(t).ok_or_else(|| AdvanceError { index: self.consumed, token: t.text.clone() })?;
        let new_len = self.frames.len() - plan.pops;
        self.frames.truncate(new_len);
        let i = self.consumed;
        self.consumed += 1;
        let top = self.frames.len() - 1;
        let frame = self.frames[top];
        match frame {
            Frame::Oracle(stage) => match (stage, t.text.as_str()) {
                (OracleStage::Cond, "?") => {
                    self.frames[top] = Frame::Oracle(OracleStage::Then);
                    self.open_prop(PropContext::Branch, i + 1);
                }
                (OracleStage::Then, ":") => {
                    self.frames[top] = Frame::Oracle(OracleStage::Else);
                    self.open_prop(PropContext::Branch, i + 1);
                }
                _ => self.frames[top] = Frame::Oracle(OracleStage::Done),
            },
            Frame::Prop { .. } => self.open_atom(i + 1),
            Frame::Atom { start, stage } => {
                if stage == AtomStage::ExpectClass {
                    self.frames[top] = Frame::Atom { stage: AtomStage::Done, start };
                } else if t.is("instanceof") {
                    self.frames[top] = Frame::Atom { stage: AtomStage::ExpectClass, start };
                } else {
                    self.frames[top] = Frame::Atom { stage: AtomStage::AfterRight { op: i }, start };
                    self.frames.push(Frame::Arith { start: i + 1, has_op: false });
                    self.frames.push(Frame::Operand { role: Role::Right, stage: OperandStage::Start, start: i + 1 });
                }
            }
            Frame::Arith { start, .. } => {
                self.frames[top] = Frame::Arith { start, has_op: true };
                self.frames.push(Frame::Operand { role: Role::Factor, stage: OperandStage::Start, start: i + 1 });
            }
            Frame::Operand { role, stage, start } => {
                let set = |s: &mut Self, stage| s.frames[top] = Frame::Operand { role, stage, start };
                match stage {
                    OperandStage::Start if t.is("(") && t.kind == TokenKind::Punctuation => {
                        set(self, OperandStage::AwaitClose);
                        self.open_prop(PropContext::Paren, i + 1);
                    }
                    OperandStage::Start if t.is_literal() => set(self, OperandStage::Closed),
                    OperandStage::Start => set(self, OperandStage::Chain),
                    OperandStage::AwaitClose => set(self, OperandStage::Closed),
                    OperandStage::Chain | OperandStage::MemberWord if t.is(".") => {
                        set(self, OperandStage::ExpectMember)
                    }
                    OperandStage::ExpectMember if QUANTIFIERS.contains(&t.text.as_str()) => {
                        set(self, OperandStage::QuantifierWord)
                    }
                    OperandStage::ExpectMember => set(self, OperandStage::MemberWord),
                    OperandStage::MemberWord => {
                        set(self, OperandStage::InCall);
                        self.frames.push(Frame::Args { stage: ArgsStage::Open, count: 0, open: i });
                    }
                    OperandStage::QuantifierWord => {
                        set(self, OperandStage::InLambda);
                        self.frames.push(Frame::Lambda { stage: LambdaStage::ExpectVar, open: i });
                    }
                    _ => unreachable!("plan accepted a token the operand cannot take"),
                }
            }
            Frame::Args { stage, count, open } => {
                if t.is(")") && t.kind == TokenKind::Punctuation {
                    self.finish_child();
                } else if t.is(",") && t.kind == TokenKind::Punctuation {
                    self.frames[top] = Frame::Args { stage: ArgsStage::ExpectArg, count, open };
                } else {
                    let _ = stage;
                    self.frames[top] = Frame::Args { stage: ArgsStage::AfterArg, count: count + 1, open };
                }
            }
            Frame::Lambda { stage, open } => match stage {
                LambdaStage::ExpectVar => self.frames[top] = Frame::Lambda { stage: LambdaStage::ExpectArrow, open },
                LambdaStage::ExpectArrow => {
                    self.frames[top] = Frame::Lambda { stage: LambdaStage::AfterBody, open };
                    self.open_prop(PropContext::Lambda, i + 1);
                }
                LambdaStage::AfterBody => self.finish_child(),
            },
        }
        Ok(())
    }

    /// Pops a call or lambda frame and returns its operand to chain stage.
    fn finish_child(&mut self) {
        self.frames.pop();
        if let Some(Frame::Operand { role, start, .. }) = self.frames.last().copied() {
            *self.frames.last_mut().expect("operand") = Frame::Operand { role, stage: OperandStage::Chain, start };
        }
    }
}

pub fn completable(f: &Frame) -> bool {
    match f {
        Frame::Oracle(_) => false,
        Frame::Prop { .. } | Frame::Arith { .. } => true,
        Frame::Atom { stage, .. } => *stage != AtomStage::ExpectClass,
        Frame::Operand { stage, .. } => {
            matches!(stage, OperandStage::Closed | OperandStage::Chain | OperandStage::MemberWord)
        }
        Frame::Args { .. } | Frame::Lambda { .. } => false,
    }
}

pub fn expected_of(f: &Frame, out: &mut Vec<Expected>) {
    use Expected::Symbol;
    match f {
        Frame::Oracle(OracleStage::Cond) => out.extend([Symbol("?"), Symbol(";")]),
        Frame::Oracle(OracleStage::Then) => out.push(Symbol(":")),
        Frame::Oracle(OracleStage::Else) => out.push(Symbol(";")),
        Frame::Oracle(OracleStage::Done) => {}
        Frame::Prop { .. } => out.extend([Symbol("&&"), Symbol("||")]),
        Frame::Atom { stage, .. } => match stage {
            AtomStage::AfterLeft => {
                out.extend(RELATIONAL.iter().map(|s| Symbol(s)));
                out.push(Symbol("instanceof"));
            }
            AtomStage::ExpectClass => out.push(Expected::ClassName),
            AtomStage::AfterRight { .. } | AtomStage::Done => {}
        },
        Frame::Arith { .. } => out.extend(ARITH_OPS.iter().map(|s| Symbol(s))),
        Frame::Operand { role, stage, .. } => match stage {
            OperandStage::Start => out.extend([Expected::OperandStart(*role), Symbol("(")]),
            OperandStage::AwaitClose => out.push(Symbol(")")),
            OperandStage::Closed | OperandStage::InCall | OperandStage::InLambda => {}
            OperandStage::Chain => out.push(Symbol(".")),
            OperandStage::ExpectMember => out.push(Expected::Member),
            OperandStage::MemberWord => out.extend([Symbol("("), Symbol(".")]),
            OperandStage::QuantifierWord => out.push(Symbol("(")),
        },
        Frame::Args { stage, .. } => match stage {
            ArgsStage::Open => out.extend([Expected::Argument, Symbol(")")]),
            ArgsStage::AfterArg => out.extend([Symbol(","), Symbol(")")]),
            ArgsStage::ExpectArg => out.push(Expected::Argument),
        },
        Frame::Lambda { stage, .. } => match stage {
            LambdaStage::ExpectVar => out.push(Expected::BoundVariable),
            LambdaStage::ExpectArrow => out.push(Symbol("->")),
            LambdaStage::AfterBody => out.push(Symbol(")")),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::tokenize;

    fn state_after(s: &str) -> GrammarState {
        let mut st = GrammarState::initial();
        for t in tokenize(s).unwrap() {
            st.push(&t).unwrap();
        }
        st
    }

    fn symbols(st: &GrammarState) -> Vec<&'static str> {
        st.legal_next()
            .into_iter()
            .filter_map(|e| if let Expected::Symbol(s) = e { Some(s) } else { None })
            .collect()
    }

    #[test]
    fn initial_state_needs_an_operand() {
        let st = GrammarState::initial();
        let legal = st.legal_next();
        assert_eq!(legal, [Expected::OperandStart(Role::Left), Expected::Symbol("(")]);
        assert!(!symbols(&st).contains(&";"));
    }

    #[test]
    fn after_parameter() {
        let syms = symbols(&state_after("loadFactor"));
        for s in ["==", "!=", "<", "<=", ">", ">=", ".", "instanceof"] {
            assert!(syms.contains(&s), "{s}");
        }
        assert!(!syms.contains(&"+"));
    }

    #[test]
    fn after_period_only_members() {
        let st = state_after("this.iterator().");
        assert_eq!(st.legal_next(), [Expected::Member]);
    }

    #[test]
    fn full_oracles_complete() {
        for s in [
            "series >= 0;",
            "(object == null) == false;",
            "Arrays.stream(array).anyMatch(jdVar -> jdVar == target) ? methodResultID == true : methodResultID == false;",
            "resultSet.isClosed();",
            "a.f(x, 1) == b + c * 2;",
        ] {
            assert!(state_after(s).is_complete(), "{s}");
        }
    }

    #[test]
    fn illegal_tokens_are_rejected() {
        let st = state_after("x ==");
        assert!(st.advance(&tokenize(";").unwrap()[0]).is_err());
        let st = state_after("a ? b : c");
        assert!(st.advance(&tokenize("?").unwrap()[0]).is_err());
    }
}
