//! Backends for a run, context enumeration, and ordered parallel mapping.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use oraclegen_core::engine::{tag_from_text, GenerationContext, OracleType};
use oraclegen_core::generation::{
    Backend, BackendError, Clock, HeuristicBackend, HeuristicOptions, PromptBundle, ScriptBook,
};
use oraclegen_core::grammar::tokenize;
use oraclegen_core::model::{parse_doc_comment, DocTagKind, Visibility};
use oraclegen_core::ProjectModel;

use crate::config::BackendSpec;
use crate::jsonl::read_oracles;
use crate::remote::RemoteBackend;

/// Makes one backend instance per generation context. Instances are never
/// shared between threads, so serial backends need no queueing.
pub enum BackendFactory {
    Scripted(ScriptBook),
    Heuristic(HeuristicOptions),
    Remote(RemoteBackend),
}

impl BackendFactory {
    pub fn new(spec: &BackendSpec, model: &ProjectModel) -> Result<BackendFactory> {
        Ok(match spec {
            BackendSpec::Scripted { script } => BackendFactory::Scripted(script_book(script, model)?),
            BackendSpec::Heuristic { except_style } => {
                BackendFactory::Heuristic(HeuristicOptions { except_style: *except_style })
            }
            BackendSpec::Remote { endpoint, timeout_seconds, retries } => BackendFactory::Remote(RemoteBackend::new(
                endpoint,
                Duration::from_secs_f64(*timeout_seconds),
                *retries,
            )),
        })
    }

    pub fn instance(&self, context_id: &str) -> Box<dyn Backend + Send> {
        match self {
            BackendFactory::Scripted(book) => Box::new(book.backend_for(context_id)),
            BackendFactory::Heuristic(o) => Box::new(HeuristicBackend::new(*o)),
            BackendFactory::Remote(r) => Box::new(r.clone()),
        }
    }
}

/// Scripts from an oracles file: each positive sample's tokens, keyed by
/// its context; negative samples decline.
pub fn script_book(path: &Path, model: &ProjectModel) -> Result<ScriptBook> {
    let (samples, _) = read_oracles(path)?;
    let mut book = ScriptBook::new();
    for (i, s) in samples.iter().enumerate() {
        let ctx = s.context(model).with_context(|| format!("{}: record {}", path.display(), i + 1))?;
        let script = if s.is_negative() {
            None
        } else {
            Some(tokenize(&s.oracle_text).map_err(anyhow::Error::msg)?.into_iter().map(|t| t.text).collect())
        };
        book.insert(ctx.id(), script);
    }
    Ok(book)
}

/// Remembers the first transport failure seen by any wrapped backend.
#[derive(Clone, Default)]
pub struct FatalFlag(Arc<Mutex<Option<BackendError>>>);

impl FatalFlag {
    pub fn get(&self) -> Option<BackendError> {
        self.0.lock().expect("fatal flag").clone()
    }

    pub fn is_set(&self) -> bool {
        self.0.lock().expect("fatal flag").is_some()
    }

    fn record<T>(&self, r: Result<T, BackendError>) -> Result<T, BackendError> {
        if let Err(e @ (BackendError::Transport { .. } | BackendError::Timeout { .. })) = &r {
            self.0.lock().expect("fatal flag").get_or_insert_with(|| e.clone());
        }
        r
    }

    pub fn guard<B: Backend>(&self, inner: B) -> Guarded<B> {
        Guarded { inner, flag: self.clone() }
    }
}

pub struct Guarded<B> {
    inner: B,
    flag: FatalFlag,
}

impl<B: Backend> Backend for Guarded<B> {
    fn evaluate(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        let r = self.inner.evaluate(prompt);
        self.flag.record(r)
    }

    fn select(&mut self, prompt: &PromptBundle) -> Result<String, BackendError> {
        let r = self.inner.select(prompt);
        self.flag.record(r)
    }
}

/// Wall-clock time since construction.
pub struct WallClock(Instant);

impl WallClock {
    pub fn start() -> WallClock {
        WallClock(Instant::now())
    }
}

impl Clock for WallClock {
    fn elapsed_seconds(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}

/// One attempt per `@param`, `@return`, and `@throws` tag of every
/// non-private method, in class and declaration order; with `free_text`,
/// also one attempt on the main description per oracle type that has no
/// tag. Contexts the model rejects (a postcondition of a void method) are
/// left out.
pub fn contexts<'m>(
    model: &'m ProjectModel,
    free_text: bool,
    filter: impl Fn(&str, &str) -> bool,
) -> Vec<GenerationContext<'m>> {
    let mut out = Vec::new();
    for class in model.classes.values() {
        for unit in &class.methods {
            if unit.visibility == Visibility::Private || !filter(&class.qualified_name, &unit.name) {
                continue;
            }
            for ty in OracleType::ALL {
                let tags: Vec<_> = unit.tags.iter().filter(|t| t.kind == ty.tag_kind()).cloned().collect();
                if tags.is_empty() {
                    if free_text {
                        let description = parse_doc_comment(&unit.doc_text).description;
                        if !description.is_empty() {
                            let tag = tag_from_text(unit, &description).filter(|t| t.kind == DocTagKind::FreeText);
                            if let Ok(c) = GenerationContext::new(model, class, unit, ty, tag) {
                                out.push(c);
                            }
                        }
                    }
                    continue;
                }
                for tag in tags {
                    if let Ok(c) = GenerationContext::new(model, class, unit, ty, Some(tag)) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

/// `f` over `items` on up to `parallelism` threads; results keep input
/// order.
pub fn par_map<T: Sync, R: Send>(items: &[T], parallelism: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if parallelism <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..parallelism.min(items.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                *slots[i].lock().expect("slot") = Some(r);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot").expect("every slot filled")).collect()
}
