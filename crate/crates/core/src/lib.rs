//! Neuro-symbolic generation of axiomatic test oracles for Java methods.
//!
//! The crate is `no_std` (with `alloc`) and holds every algorithm of the
//! pipeline; filesystem access, file formats, remote transport, and the CLI
//! live in the `oraclegen` companion crate.
//!
//! - [`model`]: declaration-level Java model (classes, members, doc tags).
//! - [`grammar`]: oracle tokenizer, parser, canonical renderer, and the
//!   incremental automaton reporting which tokens may follow a prefix.
//! - [`engine`]: token collection, typing, and context-restriction filtering.
//! - [`generation`]: prompt rendering, backends, and the token-by-token loop.
//! - [`dataset`]: oracle/token sample records and disaggregation.
//! - [`evaluation`]: normalization, outcome classification, metrics.
//! - [`augmentation`]: injecting oracles into existing test sources.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod augmentation;
pub mod dataset;
pub mod engine;
pub mod evaluation;
pub mod generation;
pub mod grammar;
pub mod model;

pub use engine::{CandidateSet, GenerationContext, OracleType, TokenEngine};
pub use grammar::{GrammarState, OracleAst, PartialOracle, Token, TokenKind};
pub use model::{ClassInfo, DocTag, MethodInfo, ProjectModel, TypeRef};
