//! Run configuration: a TOML file, overridden by command-line flags.
//!
//! ```toml
//! source-root = "project/src"
//! signature-files = ["signatures/java.sql.sig.jsonl"]
//! backend = "remote:http://127.0.0.1:8080"
//! output-dir = "out"
//! parallelism = 4
//! free-text-attempts = false
//! strict-metrics = false
//! project-name = "demo"
//!
//! [limits]
//! max-tokens = 64
//! max-seconds = 30.0
//!
//! [remote]
//! timeout-seconds = 30.0
//! retries = 2
//!
//! [prompt]
//! context-lines = 64
//! max-chars = 8000
//! ```
//!
//! Relative paths in the file are taken from the file's directory.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use oraclegen_core::generation::{Limits, PromptBudget};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Where generation decisions come from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BackendSpec {
    /// Replays the oracles of an `oracles.jsonl` file, keyed by context;
    /// negative samples and unknown contexts decline.
    Scripted { script: PathBuf },
    Heuristic {
        #[serde(rename = "exceptStyle")]
        except_style: bool,
    },
    Remote {
        endpoint: String,
        #[serde(rename = "timeoutSeconds")]
        timeout_seconds: f64,
        retries: u32,
    },
}

impl FromStr for BackendSpec {
    type Err = String;

    /// `scripted:<file>`, `heuristic`, `heuristic:except-style`, or
    /// `remote:<url>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(file) = s.strip_prefix("scripted:") {
            if file.is_empty() {
                return Err("scripted backend needs a script file".into());
            }
            return Ok(BackendSpec::Scripted { script: PathBuf::from(file) });
        }
        if let Some(url) = s.strip_prefix("remote:") {
            if !(url.starts_with("http://") || url.starts_with("https://")) {
                return Err(format!("remote endpoint {url:?} is not an http(s) URL"));
            }
            return Ok(BackendSpec::Remote { endpoint: url.into(), timeout_seconds: 30.0, retries: 2 });
        }
        match s {
            "heuristic" => Ok(BackendSpec::Heuristic { except_style: false }),
            "heuristic:except-style" => Ok(BackendSpec::Heuristic { except_style: true }),
            _ => Err(format!("unknown backend {s:?}; expected scripted:<file>, heuristic, or remote:<url>")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub source_root: PathBuf,
    pub signature_files: Vec<PathBuf>,
    pub backend: BackendSpec,
    pub limits: Limits,
    pub budget: PromptBudget,
    #[serde(skip_serializing)]
    pub output_dir: PathBuf,
    pub parallelism: usize,
    pub free_text_attempts: bool,
    pub strict_metrics: bool,
    pub project_name: String,
}

/// A bad configuration value, named by its key.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("config key `{key}`: {message}")]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

fn err(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { key: key.into(), message: message.into() }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileLimits {
    max_tokens: Option<usize>,
    max_seconds: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileRemote {
    timeout_seconds: Option<f64>,
    retries: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FilePrompt {
    context_lines: Option<usize>,
    max_chars: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigFile {
    source_root: Option<PathBuf>,
    signature_files: Option<Vec<PathBuf>>,
    backend: Option<String>,
    output_dir: Option<PathBuf>,
    parallelism: Option<usize>,
    free_text_attempts: Option<bool>,
    strict_metrics: Option<bool>,
    project_name: Option<String>,
    limits: Option<FileLimits>,
    remote: Option<FileRemote>,
    prompt: Option<FilePrompt>,
}

/// Values given on the command line; `None` keeps the file's value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub source_root: Option<PathBuf>,
    pub signature_files: Vec<PathBuf>,
    pub backend: Option<String>,
    pub output_dir: Option<PathBuf>,
    pub max_tokens: Option<usize>,
    pub parallelism: Option<usize>,
    pub strict_metrics: bool,
    pub free_text: bool,
}

fn parse_file(path: &Path) -> Result<ConfigFile, ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| err("config", format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| {
        let msg = e.message().to_string();
        let key = msg
            .split('`')
            .nth(1)
            .filter(|_| msg.starts_with("unknown field") || msg.starts_with("missing field"))
            .map(str::to_string)
            .or_else(|| e.span().map(|s| key_at(&text, s.start)))
            .filter(|k| !k.is_empty())
            .unwrap_or_else(|| "config".to_string());
        err(&key, msg)
    })
}

/// The dotted key of the assignment on the line holding byte `pos`.
fn key_at(text: &str, pos: usize) -> String {
    let start = text[..pos].rfind('\n').map_or(0, |i| i + 1);
    let line = text[start..].lines().next().unwrap_or("");
    let Some((key, _)) = line.split_once('=') else { return String::new() };
    let table = text[..start]
        .lines()
        .rev()
        .find_map(|l| l.trim().strip_prefix('[').and_then(|l| l.strip_suffix(']')))
        .map(|t| format!("{}.", t.trim()));
    format!("{}{}", table.unwrap_or_default(), key.trim())
}

impl RunConfig {
    /// Merges the optional config file with `flags`, then validates.
    pub fn resolve(file: Option<&Path>, flags: &Overrides) -> Result<RunConfig, ConfigError> {
        let (f, base) = match file {
            Some(p) => (parse_file(p)?, p.parent().map(Path::to_path_buf).unwrap_or_default()),
            None => (ConfigFile::default(), PathBuf::new()),
        };
        let rel = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };
        let source_root = flags
            .source_root
            .clone()
            .or_else(|| f.source_root.map(rel))
            .ok_or_else(|| err("source-root", "required (flag --source-root or config file)"))?;
        let mut signature_files: Vec<PathBuf> = f.signature_files.unwrap_or_default().into_iter().map(rel).collect();
        signature_files.extend(flags.signature_files.iter().cloned());
        let output_dir = flags.output_dir.clone().or_else(|| f.output_dir.map(rel)).unwrap_or_else(|| PathBuf::from("out"));
        let parallelism = flags.parallelism.or(f.parallelism).unwrap_or(1);
        if parallelism < 1 {
            return Err(err("parallelism", "must be at least 1"));
        }
        let fl = f.limits.unwrap_or_default();
        let limits = Limits {
            max_tokens: flags.max_tokens.or(fl.max_tokens).unwrap_or(Limits::default().max_tokens),
            max_seconds: fl.max_seconds,
        };
        if limits.max_tokens < 2 {
            return Err(err("limits.max-tokens", "must be at least 2"));
        }
        if limits.max_seconds.is_some_and(|s| s.is_nan() || s <= 0.0) {
            return Err(err("limits.max-seconds", "must be positive"));
        }
        let fp = f.prompt.unwrap_or_default();
        let d = PromptBudget::default();
        let budget = PromptBudget {
            context_lines: fp.context_lines.unwrap_or(d.context_lines),
            max_chars: fp.max_chars.unwrap_or(d.max_chars),
        };
        let backend_text = flags.backend.clone().or(f.backend).unwrap_or_else(|| "heuristic".into());
        let mut backend: BackendSpec = backend_text.parse().map_err(|m: String| err("backend", m))?;
        match &mut backend {
            BackendSpec::Remote { timeout_seconds, retries, .. } => {
                let r = f.remote.unwrap_or_default();
                *timeout_seconds = r.timeout_seconds.unwrap_or(*timeout_seconds);
                *retries = r.retries.unwrap_or(*retries);
                if timeout_seconds.is_nan() || *timeout_seconds <= 0.0 {
                    return Err(err("remote.timeout-seconds", "must be positive"));
                }
            }
            BackendSpec::Scripted { script } if flags.backend.is_none() => *script = rel(script.clone()),
            _ => {}
        }
        let project_name = f.project_name.unwrap_or_else(|| {
            let canon = fs::canonicalize(&source_root).unwrap_or_else(|_| source_root.clone());
            canon
                .ancestors()
                .filter_map(Path::file_name)
                .map(|n| n.to_string_lossy().into_owned())
                .find(|n| !matches!(n.as_str(), "src" | "main" | "java"))
                .unwrap_or_else(|| "project".into())
        });
        Ok(RunConfig {
            source_root,
            signature_files,
            backend,
            limits,
            budget,
            output_dir,
            parallelism,
            free_text_attempts: flags.free_text || f.free_text_attempts.unwrap_or(false),
            strict_metrics: flags.strict_metrics || f.strict_metrics.unwrap_or(false),
            project_name,
        })
    }

    /// SHA-256 of the configuration as JSON, hex encoded.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for BackendSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendSpec::Scripted { script } => write!(f, "scripted:{}", script.display()),
            BackendSpec::Heuristic { except_style: false } => f.write_str("heuristic"),
            BackendSpec::Heuristic { except_style: true } => f.write_str("heuristic:except-style"),
            BackendSpec::Remote { endpoint, .. } => write!(f, "remote:{endpoint}"),
        }
    }
}
