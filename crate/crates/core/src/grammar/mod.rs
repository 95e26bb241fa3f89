//! Oracle expression grammar.
//!
//! Oracles are boolean Java expressions terminated by `;`, built from access
//! chains over the method's parameters, `this`, and `methodResultID`.
//! [`GRAMMAR_EBNF`] is the reference; [`parse`] and [`GrammarState`]
//! implement it independently.

pub mod ast;
mod automaton;
mod parser;
mod render;
mod token;

use alloc::string::String;
use alloc::vec::Vec;

pub use ast::OracleAst;
pub use automaton::{
    completable, expected_of, is_base_word, AdvanceError, ArgsStage, AtomStage, Expected, Frame, GrammarState,
    LambdaStage, OperandStage, OracleStage, Plan, PropContext, Role,
};
pub use parser::{parse, parse_arith, parse_operand, parse_prop, SyntaxError};
pub use render::{render, render_arith, render_operand, render_prop, to_tokens};
pub use token::{
    render_tokens, tokenize, LexError, LiteralKind, Token, TokenKind, OPERATORS, PUNCTUATION, QUANTIFIERS, RELATIONAL,
    RESERVED,
};

pub const GRAMMAR_EBNF: &str = r#"oracle      = prop , [ "?" , prop , ":" , prop ] , ";" ;
prop        = conjunction , { "||" , conjunction } ;
conjunction = atom , { "&&" , atom } ;
atom        = operand , [ relop , arith | "instanceof" , classname ] ;
relop       = "==" | "!=" | "<" | "<=" | ">" | ">=" ;
arith       = term , { ( "+" | "-" ) , term } ;
term        = operand , { ( "*" | "/" | "%" ) , operand } ;
operand     = literal | "(" , prop , ")" | chain ;
chain       = base , { "." , member } ;
base        = identifier | "this" | "methodResultID" | "jdVar" ;
member      = name
            | name , "(" , [ argument , { "," , argument } ] , ")"
            | quantifier , "(" , "jdVar" , "->" , prop , ")" ;
quantifier  = "anyMatch" | "allMatch" | "noneMatch" ;
argument    = identifier | "this" | "methodResultID" | "jdVar" | literal ;
literal     = integer | floating | string | char | "true" | "false" | "null" ;
classname   = identifier ;
"#;

/// Parses oracle text.
pub fn parse_text(text: &str) -> Result<OracleAst, OracleSyntaxError> {
    let toks = tokenize(text)?;
    Ok(parse(&toks)?)
}

/// Canonical form of oracle text.
pub fn canonicalize(text: &str) -> Result<String, OracleSyntaxError> {
    Ok(render(&parse_text(text)?))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleSyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
}

/// The oracle built so far.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialOracle {
    pub tokens: Vec<Token>,
}

impl PartialOracle {
    pub fn new() -> PartialOracle {
        PartialOracle::default()
    }

    pub fn from_tokens(tokens: Vec<Token>) -> PartialOracle {
        PartialOracle { tokens }
    }

    pub fn rendered_text(&self) -> String {
        render_tokens(&self.tokens)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn last(&self) -> Option<&Token> {
        self.tokens.last()
    }

    /// Replays the automaton over the tokens.
    pub fn state(&self) -> Result<GrammarState, AdvanceError> {
        let mut s = GrammarState::initial();
        for t in &self.tokens {
            s.push(t)?;
        }
        Ok(s)
    }
}
