//! Run manifests and CSV emission.
//!
//! Every output file carries the manifest that produced it: CSVs as a
//! trailing `# manifest: {...}` comment line, JSON files as a `manifest`
//! field. The manifest records the exact argument vector, so `rerun` can
//! re-execute it; everything except the timestamp is a pure function of
//! the arguments, which makes reruns byte-identical up to that line.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

pub const MANIFEST_PREFIX: &str = "# manifest: ";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub subcommand: String,
    /// Arguments exactly as given (without the binary name); `rerun`
    /// re-executes these.
    pub argv: Vec<String>,
    /// The same arguments as a sorted key-value map, for readability.
    pub flags: BTreeMap<String, String>,
    pub seed: u64,
    /// File names (relative to the output directory) this run writes.
    pub outputs: Vec<String>,
    pub version: String,
    /// RFC 3339 creation time; the only field exempt from reproducibility.
    pub timestamp: String,
}

impl ExperimentManifest {
    pub fn new(subcommand: &str, argv: &[String], seed: u64, outputs: &[&str]) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            argv: argv.to_vec(),
            flags: flags_from_argv(argv),
            seed,
            outputs: outputs.iter().map(|s| s.to_string()).collect(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn comment_line(&self) -> String {
        format!(
            "{MANIFEST_PREFIX}{}",
            serde_json::to_string(self).expect("manifest serializes")
        )
    }
}

/// Collapses an argument vector into a key-value map: `--key value` pairs,
/// with bare switches mapped to `"true"`. The leading subcommand token is
/// skipped.
fn flags_from_argv(argv: &[String]) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    let mut it = argv.iter().skip(1).peekable();
    while let Some(tok) = it.next() {
        if let Some(key) = tok.strip_prefix("--") {
            let value = match it.peek() {
                Some(next) if !next.starts_with("--") => it.next().unwrap().clone(),
                _ => "true".to_string(),
            };
            map.insert(key.to_string(), value);
        }
    }
    map
}

/// In-memory CSV being assembled: header, data rows, trailing manifest.
pub struct CsvFile {
    pub name: &'static str,
    header: &'static str,
    rows: Vec<String>,
}

impl CsvFile {
    pub fn new(name: &'static str, header: &'static str) -> Self {
        Self { name, header, rows: Vec::new() }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.rows.push(fields.join(","));
    }

    pub fn write(&self, dir: &Path, manifest: &ExperimentManifest) -> Result<PathBuf> {
        let mut content = String::new();
        content.push_str(self.header);
        content.push('\n');
        for row in &self.rows {
            content.push_str(row);
            content.push('\n');
        }
        content.push_str(&manifest.comment_line());
        content.push('\n');
        let path = dir.join(self.name);
        fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}

/// Writes a JSON artifact with the manifest embedded as a `manifest` field
/// alongside the payload's own fields.
pub fn write_json<T: Serialize>(
    dir: &Path,
    name: &str,
    manifest: &ExperimentManifest,
    payload: &T,
) -> Result<PathBuf> {
    let mut value = serde_json::to_value(payload)?;
    match value.as_object_mut() {
        Some(obj) => {
            obj.insert("manifest".into(), serde_json::to_value(manifest)?);
        }
        None => bail!("JSON payload for {name} must be an object"),
    }
    let path = dir.join(name);
    fs::write(&path, format!("{:#}\n", value))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Recovers a manifest from a previous run's artifact: a JSON file with a
/// `manifest` field, a raw manifest JSON, or a CSV with the trailing
/// manifest comment.
pub fn read_manifest(path: &Path) -> Result<ExperimentManifest> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(value) = serde_json::from_str::<serde_json::Value>(&text) {
        if let Some(inner) = value.get("manifest") {
            return Ok(serde_json::from_value(inner.clone())?);
        }
        if value.get("argv").is_some() {
            return Ok(serde_json::from_value(value)?);
        }
        bail!("{} is JSON but holds no manifest", path.display());
    }
    for line in text.lines().rev() {
        if let Some(json) = line.strip_prefix(MANIFEST_PREFIX) {
            return Ok(serde_json::from_str(json)?);
        }
    }
    bail!("no `{MANIFEST_PREFIX}` line found in {}", path.display())
}

/// Floats in CSV cells: scientific notation with 12 significant digits,
/// locale-independent and diff-stable.
pub fn f12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn mean_and_sample_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    (mean, var.sqrt())
}
