//! Loading a [`ProjectModel`] from a source tree and signature files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use oraclegen_core::model::{ProjectModelBuilder, SignatureClass};
use oraclegen_core::ProjectModel;
use walkdir::WalkDir;

/// `.java` files under `root`, and `*.sig.jsonl` files found there too, in
/// path order.
fn collect(root: &Path) -> Result<(Vec<PathBuf>, Vec<PathBuf>)> {
    let mut java = Vec::new();
    let mut sigs = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.with_context(|| format!("walking {}", root.display()))?;
        if !entry.file_type().is_file() {
            continue;
        }
        let name = entry.file_name().to_string_lossy();
        if name.ends_with(".java") {
            java.push(entry.into_path());
        } else if name.ends_with(".sig.jsonl") {
            sigs.push(entry.into_path());
        }
    }
    Ok((java, sigs))
}

fn relative(root: &Path, p: &Path) -> String {
    p.strip_prefix(root).unwrap_or(p).to_string_lossy().replace('\\', "/")
}

/// Parses one signature file: one [`SignatureClass`] per non-blank line.
pub fn read_signature_file(path: &Path) -> Result<Vec<(usize, SignatureClass)>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let class: SignatureClass =
            serde_json::from_str(line).with_context(|| format!("{}:{}", path.display(), i + 1))?;
        out.push((i + 1, class));
    }
    Ok(out)
}

/// Builds the model of every `.java` file under `source_root` plus the
/// given signature files and any `*.sig.jsonl` under the root.
pub fn load_model(source_root: &Path, signature_files: &[PathBuf]) -> Result<ProjectModel> {
    if !source_root.is_dir() {
        bail!("source root {} is not a directory", source_root.display());
    }
    let (java, mut sigs) = collect(source_root)?;
    for s in signature_files {
        if !sigs.contains(s) {
            sigs.push(s.clone());
        }
    }
    let mut b = ProjectModelBuilder::new(".");
    for f in &java {
        let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        b.add_source(&relative(source_root, f), &text);
    }
    for s in &sigs {
        let origin = relative(source_root, s);
        for (line, class) in read_signature_file(s)? {
            b.add_signature_class(&origin, line, &class)?;
        }
    }
    Ok(b.build()?)
}
