use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use chrono::{SecondsFormat, Utc};
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a payload layout changes.
pub const FORMAT_VERSION: u32 = 1;

/// Everything needed to reproduce a payload; written next to it as
/// `<out>.manifest.json`. `threads` is recorded but never affects the payload.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub versions: Versions,
    pub started: String,
    pub finished: String,
    pub seed: Option<u64>,
    pub threads: usize,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub spectra: &'static str,
    pub format: u32,
}

impl Versions {
    pub fn current() -> Self {
        Self { spectra: env!("CARGO_PKG_VERSION"), format: FORMAT_VERSION }
    }
}

pub fn timestamp() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Pretty JSON terminated by a single LF.
pub fn json_bytes<T: Serialize>(value: &T) -> anyhow::Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV with LF line endings.
pub fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| anyhow::anyhow!("csv buffer: {e}"))
}

/// Payload to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, payload: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, payload).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(payload)?;
            Ok(stdout.flush()?)
        }
    }
}

pub fn write_manifest(out: &Path, manifest: &RunManifest) -> anyhow::Result<()> {
    let path = manifest_path(out);
    fs::write(&path, json_bytes(manifest)?).with_context(|| format!("writing {}", path.display()))
}
