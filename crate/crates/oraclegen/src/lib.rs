//! Filesystem, dataset-file, remote-backend and command-line layer over
//! [`oraclegen_core`].

pub mod cli;
pub mod commands;
pub mod config;
pub mod jsonl;
pub mod project;
pub mod remote;
pub mod runner;
