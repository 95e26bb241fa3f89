//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use oraclegen_core::engine::restrictions_markdown;
use oraclegen_core::grammar::GRAMMAR_EBNF;

use crate::commands::{self, Report};
use crate::config::{Overrides, RunConfig};

/// Generates axiomatic test oracles for Java methods, token by token.
///
/// Exit status: 0 on success, 1 when the run finished with warnings, 2 on a
/// fatal error (bad configuration, unreadable input, unreachable backend).
#[derive(Debug, Parser)]
#[command(name = "oraclegen", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// TOML configuration file; flags override its values.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Root of the Java sources of the project under test.
    #[arg(long, value_name = "DIR")]
    pub source_root: Option<PathBuf>,
    /// Signature file (`*.sig.jsonl`) for library classes; repeatable.
    #[arg(long = "sig", value_name = "FILE")]
    pub signature_files: Vec<PathBuf>,
    /// `heuristic`, `heuristic:except-style`, `scripted:<oracles.jsonl>`, or
    /// `remote:<url>`. Default: heuristic.
    #[arg(long, value_name = "SPEC")]
    pub backend: Option<String>,
    /// Output directory. Default: out.
    #[arg(long = "out", value_name = "DIR")]
    pub output_dir: Option<PathBuf>,
    /// Maximum oracle length in tokens.
    #[arg(long, value_name = "N")]
    pub limit_tokens: Option<usize>,
    /// Worker threads.
    #[arg(long = "parallel", value_name = "N")]
    pub parallelism: Option<usize>,
    /// Count a wrong oracle as both a false positive and a false negative.
    #[arg(long)]
    pub strict_metrics: bool,
    /// Also attempt methods without a matching tag, from their description.
    #[arg(long)]
    pub free_text: bool,
}

impl RunArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let o = Overrides {
            source_root: self.source_root.clone(),
            signature_files: self.signature_files.clone(),
            backend: self.backend.clone(),
            output_dir: self.output_dir.clone(),
            max_tokens: self.limit_tokens,
            parallelism: self.parallelism,
            strict_metrics: self.strict_metrics,
            free_text: self.free_text,
        };
        Ok(RunConfig::resolve(self.config.as_deref(), &o)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the project model and write `model.json`.
    Analyze {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Generate one oracle per documented context; writes `oracles.jsonl`
    /// and `traces.jsonl`.
    Generate {
        #[command(flatten)]
        run: RunArgs,
        /// Only methods of this class, or `Class#method`.
        #[arg(long, value_name = "CLASS[#METHOD]")]
        only: Option<String>,
    },
    /// Split the positive oracles of an oracles file into token samples;
    /// writes `tokens.jsonl`.
    Disaggregate {
        #[command(flatten)]
        run: RunArgs,
        /// Oracles file (`oracles.jsonl`).
        oracles: PathBuf,
    },
    /// Generate for every ground-truth entry and score the results; writes
    /// `outcomes.jsonl`, `report.txt`, `report.json` and `review.jsonl`.
    Evaluate {
        #[command(flatten)]
        run: RunArgs,
        /// Ground-truth file (`groundtruth.jsonl`).
        ground_truth: PathBuf,
    },
    /// Insert the generated oracles of an outcomes file into the JUnit tests
    /// under a directory; writes rewritten files under `tests/` and
    /// `injection.diff`.
    Inject {
        #[command(flatten)]
        run: RunArgs,
        /// Outcomes file (`outcomes.jsonl`).
        outcomes: PathBuf,
        /// Directory of test sources.
        tests: PathBuf,
    },
    /// Print the type restrictions as a Markdown table.
    Restrictions,
    /// Print the oracle grammar.
    Grammar,
}

fn run(cmd: Command, out: &mut dyn Write) -> Result<Option<Report>> {
    Ok(Some(match cmd {
        Command::Analyze { run } => commands::analyze(&run.resolve()?)?,
        Command::Generate { run, only } => commands::generate(&run.resolve()?, only.as_deref())?,
        Command::Disaggregate { run, oracles } => commands::disaggregate_file(&run.resolve()?, &oracles)?,
        Command::Evaluate { run, ground_truth } => commands::evaluate(&run.resolve()?, &ground_truth)?,
        Command::Inject { run, outcomes, tests } => commands::inject(&run.resolve()?, &outcomes, &tests)?,
        Command::Restrictions => {
            out.write_all(restrictions_markdown().as_bytes())?;
            return Ok(None);
        }
        Command::Grammar => {
            out.write_all(GRAMMAR_EBNF.as_bytes())?;
            return Ok(None);
        }
    }))
}

/// Runs the command line `args` and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match run(cli.command, &mut stdout.lock()) {
        Ok(None) => 0,
        Ok(Some(report)) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let counts: Vec<String> = report.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            eprintln!("{}", counts.join(" "));
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
