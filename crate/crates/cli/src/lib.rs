//! Pipeline behind the `sensorwave` command: ingest, train, forecast,
//! entropy, detect, evaluate, compare, and `run` for all of them in order.
//!
//! Every command writes into a fresh output directory that is staged next
//! to the target and renamed into place only once complete.

pub mod commands;
pub mod pipeline;
pub mod settings;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

pub use settings::Settings;

/// Bad or missing command-line input.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return EXIT_USAGE;
        }
        if let Some(e) = cause.downcast_ref::<sensorwave::Error>() {
            return match e {
                sensorwave::Error::Config(_) => EXIT_USAGE,
                sensorwave::Error::Numerical(_) => EXIT_NUMERICAL,
                _ => EXIT_DATA,
            };
        }
    }
    EXIT_DATA
}

const MANIFEST: &str = "manifest.json";

/// Output directory built under a hidden sibling and renamed on commit.
/// Dropped uncommitted, the staging directory is removed.
pub struct Staged {
    target: PathBuf,
    staging: PathBuf,
    committed: bool,
}

impl Staged {
    /// Refuses a non-empty target unless it holds an earlier manifest.
    pub fn new(target: &Path) -> anyhow::Result<Self> {
        if target.exists() {
            let replaceable = target.join(MANIFEST).is_file()
                || fs::read_dir(target).map(|mut d| d.next().is_none()).unwrap_or(false);
            if !replaceable {
                return Err(UsageError(format!(
                    "{} exists and is not an earlier output directory",
                    target.display()
                ))
                .into());
            }
        }
        let name = target
            .file_name()
            .ok_or_else(|| UsageError(format!("bad output path {}", target.display())))?
            .to_string_lossy();
        let staging = target.with_file_name(format!(".{name}.partial"));
        if staging.exists() {
            fs::remove_dir_all(&staging)?;
        }
        fs::create_dir_all(&staging).with_context(|| format!("creating {}", staging.display()))?;
        Ok(Self {
            target: target.to_path_buf(),
            staging,
            committed: false,
        })
    }

    pub fn path(&self) -> &Path {
        &self.staging
    }

    pub fn join(&self, rel: &str) -> PathBuf {
        self.staging.join(rel)
    }

    /// Writes `manifest.json` listing every artifact, then moves the
    /// directory into place.
    pub fn commit<P: Serialize>(mut self, command: &str, parameters: &P) -> anyhow::Result<PathBuf> {
        let mut artifacts = Vec::new();
        list_files(&self.staging, &self.staging, &mut artifacts)?;
        artifacts.sort();
        let manifest = serde_json::json!({
            "format_version": 1,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "parameters": parameters,
            "artifacts": artifacts,
        });
        write_text(&self.staging.join(MANIFEST), &serde_json::to_string_pretty(&manifest)?)?;
        if self.target.exists() {
            fs::remove_dir_all(&self.target)?;
        }
        fs::rename(&self.staging, &self.target)?;
        self.committed = true;
        Ok(self.target.clone())
    }
}

impl Drop for Staged {
    fn drop(&mut self) {
        if !self.committed {
            let _ = fs::remove_dir_all(&self.staging);
        }
    }
}

fn list_files(root: &Path, dir: &Path, out: &mut Vec<String>) -> std::io::Result<()> {
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_dir() {
            list_files(root, &path, out)?;
        } else if let Ok(rel) = path.strip_prefix(root) {
            out.push(rel.to_string_lossy().replace('\\', "/"));
        }
    }
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    sensorwave::ingest::write_atomic(path, text.as_bytes())?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    write_text(path, &serde_json::to_string_pretty(value)?)
}
