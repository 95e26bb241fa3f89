//! Token engine: candidate collection, typing, and restriction filtering.
//!
//! [`TokenEngine`] binds one [`GenerationContext`]. For a partial oracle it
//! collects the tokens that could appear next and keeps those that are
//! grammatical, well typed, and still completable within the token budget.

mod collect;
mod context;
mod filter;
mod restrictions;
mod types;
mod typing;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::ops::Range;

pub use collect::{mine_literals, Candidate, Provenance};
pub use context::{tag_from_text, ContextError, GenerationContext, OracleType};
pub use restrictions::{list_restrictions, restriction, restrictions_markdown, RestrictionDescriptor, Slot, Violation};
pub use types::ExprType;

use crate::grammar::{
    parse, parse_arith, tokenize, AdvanceError, Frame, GrammarState, OperandStage, OracleAst, OracleSyntaxError,
    PartialOracle, Token, TokenKind,
};
use collect::{member_tokens, Collector};
use filter::{CostCache, Costs, Prefix};
use typing::Typer;

/// Default cap on oracle length, in tokens.
pub const DEFAULT_MAX_TOKENS: usize = 64;

/// Ordered, duplicate-free candidate tokens for the next position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateSet {
    candidates: Vec<Candidate>,
}

impl CandidateSet {
    pub fn new(candidates: Vec<Candidate>) -> CandidateSet {
        CandidateSet { candidates }
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.candidates.iter().map(|c| &c.token)
    }

    pub fn texts(&self) -> Vec<&str> {
        self.candidates.iter().map(|c| c.token.text.as_str()).collect()
    }

    pub fn get(&self, text: &str) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.token.text == text)
    }

    pub fn contains(&self, text: &str) -> bool {
        self.get(text).is_some()
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Syntax(#[from] OracleSyntaxError),
    #[error(transparent)]
    Type(#[from] Violation),
}

/// Collector and filter bound to one generation context.
pub struct TokenEngine<'c, 'm> {
    typer: Typer<'c, 'm>,
    cache: CostCache,
    generic: OnceCell<Vec<Candidate>>,
    max_tokens: usize,
}

impl<'c, 'm> TokenEngine<'c, 'm> {
    pub fn new(ctx: &'c GenerationContext<'m>) -> Self {
        TokenEngine { typer: Typer::new(ctx), cache: CostCache::default(), generic: OnceCell::new(), max_tokens: DEFAULT_MAX_TOKENS }
    }

    pub fn with_max_tokens(mut self, max_tokens: usize) -> Self {
        self.max_tokens = max_tokens;
        self
    }

    pub fn max_tokens(&self) -> usize {
        self.max_tokens
    }

    pub fn context(&self) -> &'c GenerationContext<'m> {
        self.typer.ctx
    }

    fn costs(&self) -> Costs<'_, 'c, 'm> {
        Costs { typer: &self.typer, cache: &self.cache }
    }

    fn prefix(&self, partial: &PartialOracle) -> Result<Prefix, AdvanceError> {
        Ok(Prefix::new(&self.costs(), partial.tokens.clone(), partial.state()?))
    }

    /// Common, project, method, and doc-literal tokens, independent of the
    /// prefix.
    pub fn collect_generic(&self) -> &[Candidate] {
        self.generic.get_or_init(|| collect::collect_generic(&self.typer))
    }

    /// Members of the receiver ending at a trailing `.`; empty otherwise or
    /// when the receiver type is unknown.
    pub fn collect_specific(&self, partial: &PartialOracle) -> Vec<Candidate> {
        let Some(recv) = self.receiver(partial) else { return Vec::new() };
        let mut c = Collector::default();
        member_tokens(&self.typer, &recv, Provenance::SpecificMember, &mut c);
        c.finish()
    }

    /// Type of the receiver ending at a trailing `.`.
    pub fn receiver(&self, partial: &PartialOracle) -> Option<ExprType> {
        if !partial.last().is_some_and(|t| t.is(".")) {
            return None;
        }
        let prefix = self.prefix(partial).ok()?;
        let top = prefix.state.frames().len() - 1;
        let Frame::Operand { stage: OperandStage::ExpectMember, start, .. } = prefix.state.frames()[top] else {
            return None;
        };
        prefix.span_type(&self.costs(), start, partial.len() - 1, top).ok()
    }

    /// Declaration lines for the member and class tokens of `set`, in
    /// candidate order, without repeats.
    pub fn declarations(&self, partial: &PartialOracle, set: &CandidateSet) -> Vec<String> {
        let recv = self.receiver(partial);
        let mut out: Vec<String> = Vec::new();
        let mut push = |line: &str| {
            if !out.iter().any(|l| l == line) {
                out.push(line.into());
            }
        };
        for c in set.candidates() {
            match c.token.kind {
                TokenKind::MemberName | TokenKind::MethodCallName => {
                    if let Some(r) = &recv {
                        for line in self.typer.member_declarations(r, &c.token.text) {
                            push(&line);
                        }
                    }
                }
                TokenKind::Identifier => {
                    if let Some(class) = self.typer.scope.classes.get(&c.token.text).and_then(|q| self.typer.ctx.model.class(q)) {
                        push(&class.declaration_text);
                    }
                }
                _ => {}
            }
        }
        out
    }

    /// Filtered candidates for the next position.
    pub fn candidates(&self, partial: &PartialOracle) -> Result<CandidateSet, AdvanceError> {
        let state = partial.state()?;
        let mut collected = self.collect_generic().to_vec();
        collected.extend(self.collect_specific(partial));
        Ok(self.filter_prefix(&self.prefix_from(partial, state), &collected))
    }

    fn prefix_from(&self, partial: &PartialOracle, state: GrammarState) -> Prefix {
        Prefix::new(&self.costs(), partial.tokens.clone(), state)
    }

    fn filter_prefix(&self, prefix: &Prefix, collected: &[Candidate]) -> CandidateSet {
        let costs = self.costs();
        let mut c = Collector::default();
        let mut ordered: Vec<&Candidate> = collected.iter().collect();
        ordered.sort_by_key(|c| c.provenance);
        for cand in ordered {
            if prefix.admit(&costs, &cand.token, self.max_tokens).is_ok() {
                c.push(cand.token.clone(), cand.provenance);
            }
        }
        CandidateSet::new(c.finish())
    }

    /// Keeps the collected tokens admissible after `partial`, whose grammar
    /// state is `state`.
    pub fn filter(&self, partial: &PartialOracle, state: &GrammarState, collected: &[Candidate]) -> CandidateSet {
        self.filter_prefix(&self.prefix_from(partial, state.clone()), collected)
    }

    /// Why `token` may or may not follow `partial`.
    pub fn check_next(&self, partial: &PartialOracle, token: &Token) -> Result<(), Violation> {
        let prefix = self.prefix(partial).map_err(|e| Violation::new("grammar", format!("{e}")))?;
        prefix.cost()?;
        prefix.admit(&self.costs(), token, self.max_tokens).map(|_| ())
    }

    /// Fewest tokens that complete `partial`.
    pub fn completion_cost(&self, partial: &PartialOracle) -> Result<usize, Violation> {
        let prefix = self.prefix(partial).map_err(|e| Violation::new("grammar", format!("{e}")))?;
        prefix.cost()
    }

    /// Type of the operand (or arithmetic expression) at `span` in `partial`.
    pub fn type_of(&self, partial: &PartialOracle, span: Range<usize>) -> Result<ExprType, Violation> {
        let arith = parse_arith(&partial.tokens[span.clone()]).map_err(|e| Violation::new("grammar", format!("{e}")))?;
        let jd = self.jd_at(partial, span.start);
        self.typer.type_arith(&arith, jd.as_ref(), 0)
    }

    /// `jdVar`'s type at a position, from the innermost open quantifier.
    fn jd_at(&self, partial: &PartialOracle, pos: usize) -> Option<ExprType> {
        let prefix = self.prefix(partial).ok()?;
        let frames = prefix.state.frames();
        (0..frames.len()).rev().find_map(|i| match frames[i] {
            Frame::Lambda { open, .. } if open < pos => prefix.jd(i),
            _ => None,
        })
    }

    pub fn check_oracle(&self, ast: &OracleAst) -> Result<(), Violation> {
        self.typer.check_oracle(ast)
    }

    /// Parses and type-checks oracle text.
    pub fn check_text(&self, text: &str) -> Result<OracleAst, CheckError> {
        let toks = tokenize(text).map_err(OracleSyntaxError::from)?;
        let ast = parse(&toks).map_err(OracleSyntaxError::from)?;
        self.typer.check_oracle(&ast)?;
        Ok(ast)
    }
}

pub fn collect_generic(ctx: &GenerationContext<'_>) -> Vec<Candidate> {
    TokenEngine::new(ctx).collect_generic().to_vec()
}

pub fn collect_specific(ctx: &GenerationContext<'_>, partial: &PartialOracle) -> Vec<Candidate> {
    TokenEngine::new(ctx).collect_specific(partial)
}

pub fn type_of(ctx: &GenerationContext<'_>, partial: &PartialOracle, span: Range<usize>) -> Result<ExprType, Violation> {
    TokenEngine::new(ctx).type_of(partial, span)
}

pub fn filter(
    ctx: &GenerationContext<'_>,
    partial: &PartialOracle,
    state: &GrammarState,
    collected: &[Candidate],
) -> CandidateSet {
    TokenEngine::new(ctx).filter(partial, state, collected)
}
