#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;

use oraclegen::config::{Overrides, RunConfig};
use serde_json::Value;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn source_root() -> PathBuf {
    fixtures().join("project/src")
}

pub fn signatures() -> Vec<PathBuf> {
    vec![fixtures().join("project/signatures/java.sql.sig.jsonl")]
}

pub fn config(out: &Path, backend: &str) -> RunConfig {
    let o = Overrides {
        source_root: Some(source_root()),
        signature_files: signatures(),
        backend: Some(backend.into()),
        output_dir: Some(out.to_path_buf()),
        ..Overrides::default()
    };
    RunConfig::resolve(None, &o).unwrap()
}

/// The common flags of a run against the fixture project.
pub fn run_flags(out: &Path) -> Vec<String> {
    let mut v = vec!["--source-root".to_string(), source_root().display().to_string()];
    for s in signatures() {
        v.push("--sig".into());
        v.push(s.display().to_string());
    }
    v.push("--out".into());
    v.push(out.display().to_string());
    v
}

pub type Handler = dyn Fn(&str, &Value) -> (u16, String) + Send + Sync;

/// A minimal HTTP/1.1 server on an ephemeral port, one thread per
/// connection, keep-alive aware.
pub struct Server {
    pub url: String,
    pub connections: Arc<AtomicUsize>,
    pub requests: Arc<AtomicUsize>,
}

fn serve(stream: TcpStream, handler: &Handler, requests: &AtomicUsize) -> std::io::Result<()> {
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut stream = stream;
    loop {
        let mut request_line = String::new();
        if reader.read_line(&mut request_line)? == 0 {
            return Ok(());
        }
        let path = request_line.split_whitespace().nth(1).unwrap_or("/").to_string();
        let mut len = 0;
        loop {
            let mut h = String::new();
            reader.read_line(&mut h)?;
            let h = h.trim_end();
            if h.is_empty() {
                break;
            }
            if let Some((k, v)) = h.split_once(':') {
                if k.eq_ignore_ascii_case("content-length") {
                    len = v.trim().parse().unwrap_or(0);
                }
            }
        }
        let mut body = vec![0; len];
        reader.read_exact(&mut body)?;
        requests.fetch_add(1, Ordering::SeqCst);
        let json: Value = serde_json::from_slice(&body).unwrap_or(Value::Null);
        let (status, reply) = handler(&path, &json);
        write!(
            stream,
            "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\n\r\n{reply}",
            reply.len()
        )?;
        stream.flush()?;
    }
}

impl Server {
    pub fn start(handler: impl Fn(&str, &Value) -> (u16, String) + Send + Sync + 'static) -> Server {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let url = format!("http://{}", listener.local_addr().unwrap());
        let connections = Arc::new(AtomicUsize::new(0));
        let requests = Arc::new(AtomicUsize::new(0));
        let handler: Arc<Handler> = Arc::new(handler);
        let (c, r) = (connections.clone(), requests.clone());
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(stream) = stream else { continue };
                c.fetch_add(1, Ordering::SeqCst);
                let (h, r) = (handler.clone(), r.clone());
                thread::spawn(move || {
                    let _ = serve(stream, &*h, &r);
                });
            }
        });
        Server { url, connections, requests }
    }

    /// Accepts connections and closes them without a reply.
    pub fn hang_up() -> Server {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let url = format!("http://{}", listener.local_addr().unwrap());
        let connections = Arc::new(AtomicUsize::new(0));
        let c = connections.clone();
        thread::spawn(move || {
            for stream in listener.incoming() {
                c.fetch_add(1, Ordering::SeqCst);
                drop(stream);
            }
        });
        Server { url, connections, requests: Arc::new(AtomicUsize::new(0)) }
    }

    /// Accepts connections and never answers.
    pub fn silent() -> Server {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let url = format!("http://{}", listener.local_addr().unwrap());
        let connections = Arc::new(AtomicUsize::new(0));
        let c = connections.clone();
        thread::spawn(move || {
            let mut held = Vec::new();
            for stream in listener.incoming() {
                c.fetch_add(1, Ordering::SeqCst);
                held.push(stream);
            }
        });
        Server { url, connections, requests: Arc::new(AtomicUsize::new(0)) }
    }
}

/// A port with nothing listening.
pub fn closed_port_url() -> String {
    let l = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}", l.local_addr().unwrap());
    drop(l);
    url
}
