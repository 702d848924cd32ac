//! Content-addressed report cache: a hit reproduces byte-identical reports.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Result;
use sha2::{Digest, Sha256};

pub fn cache_dir() -> PathBuf {
    match std::env::var_os("BRAIDMM_CACHE_DIR") {
        Some(d) => PathBuf::from(d),
        None => PathBuf::from(".braidmm-cache"),
    }
}

/// Hash of everything that determines a report: canonical config, the
/// subcommand, effective degree/buffer/seed and the engine version.
pub fn report_key(
    canonical_config: &str,
    subcommand: &str,
    degree: usize,
    buffer: usize,
    seed: u64,
) -> String {
    let mut h = Sha256::new();
    h.update(canonical_config.as_bytes());
    h.update([0u8]);
    h.update(subcommand.as_bytes());
    h.update([0u8]);
    h.update(degree.to_le_bytes());
    h.update(buffer.to_le_bytes());
    h.update(seed.to_le_bytes());
    h.update([0u8]);
    h.update(crate::report::ENGINE_VERSION.as_bytes());
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

fn entry_path(key: &str) -> PathBuf {
    cache_dir().join(format!("{key}.json"))
}

/// Fetches a cached report, discarding (with a warning) corrupt entries.
pub fn get(key: &str) -> Option<String> {
    let path = entry_path(key);
    let text = fs::read_to_string(&path).ok()?;
    match serde_json::from_str::<crate::report::CheckReport>(&text) {
        Ok(_) => Some(text),
        Err(_) => {
            eprintln!(
                "warning: corrupt cache entry {}, recomputing",
                path.display()
            );
            None
        }
    }
}

pub fn put(key: &str, report_json: &str) -> Result<()> {
    let dir = cache_dir();
    fs::create_dir_all(&dir)?;
    fs::write(entry_path(key), report_json)?;
    Ok(())
}

/// Writes a report to an explicit path, creating parent directories.
pub fn write_report(path: &Path, report_json: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, report_json)?;
    Ok(())
}
