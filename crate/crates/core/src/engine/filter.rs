//! Per-prefix analysis and candidate admission.
//!
//! Every frame of the grammar state gets a typed reading of the tokens it
//! covers and the minimum number of tokens it still needs. A candidate is
//! admitted when the frames it closes are valid where they stand and the
//! state it produces can still be completed within the token budget, which
//! keeps generation free of dead ends.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::cmp::Reverse;

use super::restrictions::Violation;
use super::types::{left_tail_cost, ExprType, Goal, Req, STREAM};
use super::typing::{complete_value, MethodSig, Typer, MAX_DEPTH};
use crate::grammar::ast::RelOp;
use crate::grammar::{
    completable, parse_operand, ArgsStage, AtomStage, Frame, GrammarState, LambdaStage, OperandStage, OracleStage,
    PropContext, Role, Token,
};

/// Paths longer than this are never explored.
const SEARCH_LIMIT: usize = 256;

#[derive(Clone, Debug)]
pub(crate) struct Info {
    /// Type bound to `jdVar` for this frame and the frames above it.
    jd: Option<ExprType>,
    depth: usize,
    goal: Option<Goal>,
    /// Right operands may not start with this token (the left operand's
    /// base word or `(`).
    avoid: Option<String>,
    cost: Result<usize, Violation>,
}

/// Caches shared by every prefix of one generation context.
#[derive(Default)]
pub(crate) struct CostCache {
    reach: RefCell<BTreeMap<(ExprType, Goal, Option<ExprType>), Option<usize>>>,
    atom: RefCell<BTreeMap<Option<ExprType>, Option<usize>>>,
    edges: RefCell<BTreeMap<(ExprType, Option<ExprType>), Vec<(usize, ExprType)>>>,
}

/// Tokens a call still needs after its name: `(`, arguments, commas, `)`.
fn call_tokens(k: usize) -> usize {
    2 + k + k.saturating_sub(1)
}

pub(crate) struct Costs<'t, 'c, 'm> {
    pub typer: &'t Typer<'c, 'm>,
    pub cache: &'t CostCache,
}

impl Costs<'_, '_, '_> {
    fn stop(&self, t: &ExprType, goal: &Goal) -> Option<usize> {
        match goal {
            Goal::LeftTail => left_tail_cost(t),
            Goal::Req(r) => self.typer.satisfies(t, r).then_some(0),
        }
    }

    /// Possible result types of calling `m` on `recv`.
    pub fn call_outcomes(&self, recv: &ExprType, m: &MethodSig, jd: Option<&ExprType>) -> Vec<ExprType> {
        if m.ret != ExprType::Reference(STREAM.into()) || m.params.is_empty() {
            return alloc::vec![self.typer.call_result(recv, m, &[])];
        }
        let mut out: Vec<ExprType> = Vec::new();
        if m.params.len() == 1 {
            for (_, t) in self.typer.scope.identifiers(jd) {
                if self.typer.assignable(t, &m.params[0]) {
                    let r = self.typer.call_result(recv, m, core::slice::from_ref(t));
                    if !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    fn methods_usable(&self, m: &MethodSig, statics: bool, jd: Option<&ExprType>) -> bool {
        m.is_static == statics && m.ret != ExprType::Void && self.typer.satisfiable(m, jd)
    }

    fn edges(&self, t: &ExprType, jd: Option<&ExprType>) -> Vec<(usize, ExprType)> {
        let key = (t.clone(), jd.cloned());
        if let Some(e) = self.cache.edges.borrow().get(&key) {
            return e.clone();
        }
        let mut out = Vec::new();
        if let ExprType::Stream(e) = t {
            if jd.is_none() {
                if let Some(b) = self.atom_min(Some(e)) {
                    out.push((6 + b, ExprType::Boolean));
                }
            }
        } else if let Some((set, statics)) = self.typer.members_of(t) {
            for f in set.fields.iter().filter(|f| f.is_static == statics) {
                out.push((2, f.ty.clone()));
            }
            for m in set.methods.iter().filter(|m| self.methods_usable(m, statics, jd)) {
                for r in self.call_outcomes(t, m, jd) {
                    out.push((2 + call_tokens(m.params.len()), r));
                }
            }
        }
        self.cache.edges.borrow_mut().insert(key, out.clone());
        out
    }

    /// Fewest tokens that turn a complete operand of type `t` into one that
    /// meets `goal`, through further member accesses.
    pub fn reach(&self, t: &ExprType, goal: &Goal, jd: Option<&ExprType>) -> Option<usize> {
        let key = (t.clone(), goal.clone(), jd.cloned());
        if let Some(r) = self.cache.reach.borrow().get(&key) {
            return *r;
        }
        let mut best: Option<usize> = None;
        let mut dist: BTreeMap<ExprType, usize> = BTreeMap::new();
        let mut heap = BinaryHeap::new();
        dist.insert(t.clone(), 0);
        heap.push(Reverse((0usize, t.clone())));
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist.get(&u).is_some_and(|&x| x < d) {
                continue;
            }
            if best.is_some_and(|b| d >= b) {
                break;
            }
            if let Some(s) = self.stop(&u, goal) {
                best = Some(best.map_or(d + s, |b| b.min(d + s)));
            }
            for (c, v) in self.edges(&u, jd) {
                let nd = d + c;
                if nd < SEARCH_LIMIT && dist.get(&v).is_none_or(|&x| nd < x) {
                    dist.insert(v.clone(), nd);
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        self.cache.reach.borrow_mut().insert(key, best);
        best
    }

    /// Fewest tokens of a complete atom in a scope.
    pub fn atom_min(&self, jd: Option<&ExprType>) -> Option<usize> {
        let key = jd.cloned();
        if let Some(r) = self.cache.atom.borrow().get(&key) {
            return *r;
        }
        let scope = &self.typer.scope;
        let mut best: Option<usize> = None;
        let bases = scope
            .identifiers(jd)
            .map(|(_, t)| t.clone())
            .chain(scope.class_order.iter().map(|s| ExprType::StaticClass(scope.classes[s].clone())))
            .collect::<Vec<_>>();
        for t in bases {
            if let Some(c) = self.reach(&t, &Goal::LeftTail, jd) {
                best = Some(best.map_or(1 + c, |b| b.min(1 + c)));
            }
        }
        self.cache.atom.borrow_mut().insert(key, best);
        best
    }
}

fn budget(msg: impl Into<String>) -> Violation {
    Violation::new("R22", msg)
}

fn mismatch(goal: &Goal, t: &ExprType) -> Violation {
    let id = match goal {
        Goal::LeftTail => match t {
            ExprType::StaticClass(_) => "R20",
            ExprType::Stream(_) => "R11",
            ExprType::Void => "R18",
            _ => "R16",
        },
        Goal::Req(Req::Numeric) if *t != ExprType::Null => "R4",
        Goal::Req(_) => "R6",
    };
    Violation::new(id, format!("a {t} operand cannot complete here"))
}

/// Analysis of one token sequence.
pub(crate) struct Analyzer<'a, 't, 'c, 'm> {
    pub costs: &'a Costs<'t, 'c, 'm>,
    pub tokens: &'a [Token],
    /// Span types are cached for spans ending at or before this index.
    pub stable: usize,
    pub spans: &'a RefCell<BTreeMap<(usize, usize), Result<ExprType, Violation>>>,
}

impl Analyzer<'_, '_, '_, '_> {
    fn typer(&self) -> &Typer<'_, '_> {
        self.costs.typer
    }

    /// Raw type of the operand covering `tokens[a..b]`.
    fn span(&self, a: usize, b: usize, info: &Info) -> Result<ExprType, Violation> {
        if b <= self.stable {
            if let Some(r) = self.spans.borrow().get(&(a, b)) {
                return r.clone();
            }
        }
        let r = match parse_operand(&self.tokens[a..b]) {
            Ok(o) => self.typer().type_operand(&o, info.jd.as_ref(), info.depth),
            Err(e) => Err(Violation::new("grammar", format!("{e}"))),
        };
        if b <= self.stable {
            self.spans.borrow_mut().insert((a, b), r.clone());
        }
        r
    }

    fn value(&self, a: usize, b: usize, info: &Info) -> Result<ExprType, Violation> {
        complete_value(self.span(a, b, info)?)
    }

    fn reach(&self, t: &ExprType, info: &Info) -> Result<usize, Violation> {
        let goal = info.goal.as_ref().expect("operand goal");
        self.costs.reach(t, goal, info.jd.as_ref()).ok_or_else(|| mismatch(goal, t))
    }

    fn atom_min(&self, jd: Option<&ExprType>) -> Result<usize, Violation> {
        self.costs.atom_min(jd).ok_or_else(|| budget("no proposition can be built in this scope"))
    }

    /// Infos for `frames[from..]`, given those below.
    pub fn extend(&self, frames: &[Frame], infos: &mut Vec<Info>, from: usize) {
        infos.truncate(from);
        for i in from..frames.len() {
            let info = self.frame_info(frames, i, infos);
            infos.push(info);
        }
    }

    fn frame_info(&self, frames: &[Frame], i: usize, infos: &[Info]) -> Info {
        let parent = i.checked_sub(1).map(|p| &infos[p]);
        let mut info = Info {
            jd: parent.and_then(|p| p.jd.clone()),
            depth: parent.map_or(0, |p| p.depth),
            goal: None,
            avoid: None,
            cost: Ok(0),
        };
        let len = self.tokens.len();
        info.cost = match frames[i] {
            Frame::Oracle(stage) => match stage {
                OracleStage::Cond | OracleStage::Else => Ok(1),
                OracleStage::Then => self.atom_min(None).map(|c| 2 + c),
                OracleStage::Done => Ok(0),
            },
            Frame::Prop { ctx, .. } => {
                if matches!(ctx, PropContext::Paren | PropContext::Lambda) {
                    info.depth += 1;
                }
                if info.depth > MAX_DEPTH {
                    Err(Violation::new("R19", "nesting too deep"))
                } else {
                    Ok(0)
                }
            }
            Frame::Atom { stage, start } => match stage {
                AtomStage::ExpectClass => self.value(start, len - 1, &info).and_then(|l| {
                    let scope = &self.typer().scope;
                    if scope.class_order.iter().any(|c| self.typer().instanceof_target(&l, c).is_ok()) {
                        Ok(1)
                    } else {
                        Err(Violation::new("R3", format!("no class can follow `instanceof` on a {l} operand")))
                    }
                }),
                AtomStage::Done => self
                    .value(start, len - 2, &info)
                    .and_then(|l| self.typer().instanceof_target(&l, &self.tokens[len - 1].text))
                    .map(|_| 0),
                _ => Ok(0),
            },
            Frame::Arith { has_op, .. } => self.arith_info(frames, i, has_op, &mut info),
            Frame::Operand { role, stage, start } => {
                info.goal = match role {
                    Role::Left => Some(Goal::LeftTail),
                    Role::Right => parent.and_then(|p| p.goal.clone()),
                    Role::Factor => Some(Goal::Req(Req::Numeric)),
                };
                if info.goal.is_none() {
                    info.cost = parent.map_or(Ok(0), |p| p.cost.clone()).and(Err(Violation::new("R6", "no comparison goal")));
                    return info;
                }
                if role == Role::Right {
                    info.avoid = parent.and_then(|p| p.avoid.clone());
                }
                self.operand_cost(role, stage, start, &info)
            }
            Frame::Args { stage, count, open } => {
                info.goal = parent.and_then(|p| p.goal.clone());
                self.args_cost(frames, i, stage, count, open, &info)
            }
            Frame::Lambda { stage, open } => {
                let Some(Frame::Operand { start, .. }) = i.checked_sub(1).map(|p| frames[p]) else {
                    unreachable!("lambda frames sit on an operand")
                };
                match self.lambda_elem(start, open, &info) {
                    Ok(e) => {
                        info.jd = Some(e.clone());
                        let body = self.atom_min(Some(&e));
                        match stage {
                            LambdaStage::ExpectVar => body.map(|b| 3 + b),
                            LambdaStage::ExpectArrow => body.map(|b| 2 + b),
                            LambdaStage::AfterBody => Ok(1),
                        }
                    }
                    Err(v) => Err(v),
                }
            }
        };
        info
    }

    fn lambda_elem(&self, start: usize, open: usize, info: &Info) -> Result<ExprType, Violation> {
        if info.jd.is_some() {
            return Err(Violation::new("R10", "nested quantifier"));
        }
        match self.span(start, open - 2, info)? {
            ExprType::Stream(e) => Ok(*e),
            t => Err(Violation::new("R11", format!("quantifier on a {t} receiver"))),
        }
    }

    fn arith_info(&self, frames: &[Frame], i: usize, has_op: bool, info: &mut Info) -> Result<usize, Violation> {
        let Some(Frame::Atom { stage: AtomStage::AfterRight { op }, start }) = i.checked_sub(1).map(|p| frames[p])
        else {
            unreachable!("arith frames sit on a comparison")
        };
        let first = &self.tokens[start];
        info.avoid = Some(first.text.clone());
        let l = self.value(start, op, info)?;
        let rel = RelOp::from_text(&self.tokens[op].text).expect("relational operator");
        let req = self.typer().requirement(&l, rel)?;
        if has_op && req != Req::Numeric {
            return Err(Violation::new("R5", format!("arithmetic compared with a {l} operand")));
        }
        info.goal = Some(Goal::Req(req));
        Ok(0)
    }

    fn operand_cost(
        &self,
        role: Role,
        stage: OperandStage,
        start: usize,
        info: &Info,
    ) -> Result<usize, Violation> {
        let len = self.tokens.len();
        let goal = info.goal.as_ref().expect("goal");
        let jd = info.jd.as_ref();
        match stage {
            OperandStage::Start => match role {
                Role::Left => self.atom_min(jd),
                _ => Ok(1),
            },
            OperandStage::AwaitClose => {
                if role == Role::Right && info.avoid.as_deref() == Some("(") {
                    return Err(Violation::new("R14", "both sides of a comparison parenthesized"));
                }
                self.costs
                    .stop(&ExprType::BooleanProposition, goal)
                    .map(|s| s + 1)
                    .ok_or_else(|| mismatch(goal, &ExprType::BooleanProposition))
            }
            OperandStage::Closed => {
                let t = &self.tokens[start];
                let ty = if t.is("(") {
                    ExprType::BooleanProposition
                } else {
                    if role == Role::Left {
                        return Err(if t.is("true") || t.is("false") {
                            Violation::new("R13", format!("`{}` as a proposition or left operand", t.text))
                        } else {
                            Violation::new("R16", format!("literal `{}` as a left operand", t.text))
                        });
                    }
                    ExprType::of_literal(t).expect("literal")
                };
                self.costs.stop(&ty, goal).ok_or_else(|| mismatch(goal, &ty))
            }
            OperandStage::Chain => {
                if role == Role::Right && info.avoid.as_deref() == Some(self.tokens[start].text.as_str()) {
                    return Err(Violation::new("R14", format!("`{}` on both sides", self.tokens[start].text)));
                }
                let t = self.span(start, len, info)?;
                self.reach(&t, info)
            }
            OperandStage::ExpectMember => {
                let recv = self.span(start, len - 1, info)?;
                self.member_cost(&recv, None, info)
            }
            OperandStage::MemberWord => {
                let recv = self.span(start, len - 2, info)?;
                self.member_cost(&recv, Some(&self.tokens[len - 1].text), info)
            }
            OperandStage::QuantifierWord => {
                let recv = self.span(start, len - 2, info)?;
                self.quantifier_cost(&recv, info).map(|c| c - 1)
            }
            OperandStage::InCall => Ok(0),
            OperandStage::InLambda => self.reach(&ExprType::Boolean, info),
        }
    }

    /// `.quantifier(jdVar -> body)` from after the `.`.
    fn quantifier_cost(&self, recv: &ExprType, info: &Info) -> Result<usize, Violation> {
        let ExprType::Stream(e) = recv else {
            return Err(Violation::new("R11", format!("quantifier on a {recv} receiver")));
        };
        if info.jd.is_some() {
            return Err(Violation::new("R10", "nested quantifier"));
        }
        let body = self.atom_min(Some(e))?;
        Ok(5 + body + self.reach(&ExprType::Boolean, info)?)
    }

    /// Cheapest completion from after `.` (when `word` is `None`) or after a
    /// member word.
    fn member_cost(&self, recv: &ExprType, word: Option<&str>, info: &Info) -> Result<usize, Violation> {
        if let ExprType::Stream(_) = recv {
            return match word {
                None => self.quantifier_cost(recv, info),
                Some(w) => Err(Violation::new("R11", format!("`{w}` on a stream"))),
            };
        }
        let Some((set, statics)) = self.typer().members_of(recv) else {
            return Err(Violation::new("R7", format!("`.` after a {recv} operand")));
        };
        let jd = info.jd.as_ref();
        let mut best: Option<usize> = None;
        let mut take = |c: usize| best = Some(best.map_or(c, |b| b.min(c)));
        let mut named = false;
        let mut why = None;
        for f in set.fields.iter().filter(|f| f.is_static == statics && word.is_none_or(|w| w == f.name)) {
            named = true;
            if let Ok(c) = self.reach(&f.ty, info) {
                take(word.map_or(1, |_| 0) + c);
            }
        }
        for m in set.methods.iter().filter(|m| m.is_static == statics && word.is_none_or(|w| w == m.name)) {
            named = true;
            if m.ret == ExprType::Void {
                why.get_or_insert_with(|| Violation::new("R18", format!("`{}` returns void", m.name)));
                continue;
            }
            if !self.typer().satisfiable(m, jd) {
                why.get_or_insert_with(|| Violation::new("R12", format!("no arguments in scope for `{}`", m.name)));
                continue;
            }
            for r in self.costs.call_outcomes(recv, m, jd) {
                if let Ok(c) = self.reach(&r, info) {
                    take(word.map_or(1, |_| 0) + call_tokens(m.params.len()) + c);
                }
            }
        }
        match (best, word) {
            (Some(c), _) => Ok(c),
            (None, Some(w)) if !named => Err(Violation::new("R8", format!("{recv} has no member `{w}`"))),
            _ => Err(why.unwrap_or_else(|| budget(format!("no member of {recv} leads to a valid operand")))),
        }
    }

    fn args_cost(
        &self,
        frames: &[Frame],
        i: usize,
        stage: ArgsStage,
        count: usize,
        open: usize,
        info: &Info,
    ) -> Result<usize, Violation> {
        let Some(Frame::Operand { start, .. }) = i.checked_sub(1).map(|p| frames[p]) else {
            unreachable!("argument frames sit on an operand")
        };
        let jd = info.jd.as_ref();
        let recv = self.span(start, open - 2, info)?;
        let name = &self.tokens[open - 1].text;
        let args = self.tokens[open + 1..]
            .iter()
            .filter(|t| !t.is(","))
            .map(|t| self.typer().scope.argument_type(t, jd))
            .collect::<Result<Vec<_>, _>>()?;
        let Some((set, statics)) = self.typer().members_of(&recv) else {
            return Err(Violation::new("R7", format!("call on a {recv} receiver")));
        };
        let mut best: Option<usize> = None;
        for m in set.methods.iter().filter(|m| m.name == *name && self.costs.methods_usable(m, statics, jd)) {
            let k = m.params.len();
            let fits = k >= count
                && (stage != ArgsStage::ExpectArg || k > count)
                && m.params.iter().zip(&args).all(|(p, a)| self.typer().assignable(a, p));
            if !fits {
                continue;
            }
            let rem = match stage {
                ArgsStage::Open if k == 0 => 1,
                ArgsStage::Open => 2 * k,
                ArgsStage::AfterArg => 2 * (k - count) + 1,
                ArgsStage::ExpectArg => 2 * (k - count),
            };
            let outcomes = if count == k {
                alloc::vec![self.typer().call_result(&recv, m, &args)]
            } else {
                self.costs.call_outcomes(&recv, m, jd)
            };
            for r in outcomes {
                if let Ok(c) = self.reach(&r, info) {
                    best = Some(best.map_or(rem + c, |b| b.min(rem + c)));
                }
            }
        }
        best.ok_or_else(|| Violation::new("R12", format!("no `{name}` overload accepts these arguments")))
    }

    /// Whether frame `i`, which is completable, may be closed now.
    pub fn pop_check(&self, frames: &[Frame], i: usize, info: &Info) -> Result<(), Violation> {
        let len = self.tokens.len();
        match frames[i] {
            Frame::Operand { stage, start, .. } => {
                let goal = info.goal.as_ref().expect("goal");
                let t = match stage {
                    OperandStage::Closed => {
                        let t = &self.tokens[start];
                        if t.is("(") {
                            ExprType::BooleanProposition
                        } else {
                            ExprType::of_literal(t).expect("literal")
                        }
                    }
                    OperandStage::Chain => self.value(start, len, info)?,
                    OperandStage::MemberWord => {
                        let recv = self.span(start, len - 2, info)?;
                        self.typer().field_type(&recv, &self.tokens[len - 1].text)?
                    }
                    _ => unreachable!("not completable"),
                };
                if self.costs.stop(&t, goal).is_some() {
                    Ok(())
                } else {
                    Err(mismatch(goal, &t))
                }
            }
            Frame::Atom { stage: AtomStage::AfterLeft, start } => {
                let t = self.value(start, len, info)?;
                if t.is_boolean() {
                    Ok(())
                } else {
                    Err(Violation::new("R17", format!("a {t} operand is not a proposition")))
                }
            }
            _ => Ok(()),
        }
    }
}

/// Analysis of a prefix, reused for every candidate of one step.
pub(crate) struct Prefix {
    pub tokens: Vec<Token>,
    pub state: GrammarState,
    pub infos: Vec<Info>,
    /// Running sums of frame costs, bottom up.
    pub sums: Vec<Result<usize, Violation>>,
    pub spans: RefCell<BTreeMap<(usize, usize), Result<ExprType, Violation>>>,
}

fn running_sums(infos: &[Info]) -> Vec<Result<usize, Violation>> {
    let mut out = Vec::with_capacity(infos.len());
    let mut acc: Result<usize, Violation> = Ok(0);
    for i in infos {
        acc = match (acc, &i.cost) {
            (Ok(a), Ok(c)) => Ok(a + c),
            (Err(e), _) => Err(e),
            (_, Err(e)) => Err(e.clone()),
        };
        out.push(acc.clone());
    }
    out
}

impl Prefix {
    pub fn new(costs: &Costs<'_, '_, '_>, tokens: Vec<Token>, state: GrammarState) -> Prefix {
        let spans = RefCell::new(BTreeMap::new());
        let mut infos = Vec::new();
        {
            let an = Analyzer { costs, tokens: &tokens, stable: tokens.len(), spans: &spans };
            an.extend(state.frames(), &mut infos, 0);
        }
        let sums = running_sums(&infos);
        Prefix { tokens, state, infos, sums, spans }
    }

    /// Raw type of `tokens[a..b]` read in the scope of frame `frame`.
    pub fn span_type(&self, costs: &Costs<'_, '_, '_>, a: usize, b: usize, frame: usize) -> Result<ExprType, Violation> {
        let an = Analyzer { costs, tokens: &self.tokens, stable: self.tokens.len(), spans: &self.spans };
        an.span(a, b, &self.infos[frame])
    }

    /// `jdVar`'s type in the scope of frame `frame`.
    pub fn jd(&self, frame: usize) -> Option<ExprType> {
        self.infos[frame].jd.clone()
    }

    /// Remaining tokens needed to finish the prefix.
    pub fn cost(&self) -> Result<usize, Violation> {
        self.sums.last().cloned().unwrap_or(Ok(0))
    }

    /// Checks one candidate; `Ok` carries the completion cost after it.
    pub fn admit(&self, costs: &Costs<'_, '_, '_>, t: &Token, max_tokens: usize) -> Result<usize, Violation> {
        let frames = self.state.frames();
        let plan = self.state.plan(t).ok_or_else(|| {
            let id = if t.is("?") { "R15" } else { "grammar" };
            Violation::new(id, format!("`{}` cannot follow `{}`", t.text, crate::grammar::render_tokens(&self.tokens)))
        })?;
        let an = Analyzer { costs, tokens: &self.tokens, stable: self.tokens.len(), spans: &self.spans };
        for j in (frames.len() - plan.pops..frames.len()).rev() {
            debug_assert!(completable(&frames[j]));
            an.pop_check(frames, j, &self.infos[j])?;
        }
        let next = self.state.advance(t).map_err(|e| Violation::new("grammar", format!("{e}")))?;
        let consumer = frames.len() - plan.pops - 1;
        let from = consumer.saturating_sub(1);
        let mut tokens = self.tokens.clone();
        tokens.push(t.clone());
        let an = Analyzer { costs, tokens: &tokens, stable: self.tokens.len(), spans: &self.spans };
        let mut infos: Vec<Info> = self.infos[..from].to_vec();
        an.extend(next.frames(), &mut infos, from);
        let mut total = if from == 0 { 0 } else { self.sums[from - 1].clone()? };
        for i in &infos[from..] {
            total += i.cost.clone()?;
        }
        if tokens.len() + total > max_tokens {
            return Err(budget(format!(
                "{} more tokens needed after {} of {max_tokens}",
                total,
                tokens.len()
            )));
        }
        Ok(total)
    }
}
