//! Run manifests: the config echo, content hashes of every emitted artifact,
//! and the experiment's scalar outcome. Two runs with the same config and
//! seed produce identical manifests apart from the timestamp and wall time.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArtifactRecord {
    /// Path relative to the run directory.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub kind: String,
    pub seed: u64,
    pub config: RunConfig,
    pub outcome: serde_json::Value,
    pub advisories: Vec<String>,
    pub failures: Vec<String>,
    pub pass: bool,
    pub artifacts: Vec<ArtifactRecord>,
    /// Volatile fields, excluded from reproducibility comparisons.
    pub timestamp_unix: u64,
    pub wall_time_s: f64,
}

pub fn hash_file(path: &Path) -> std::io::Result<ArtifactRecord> {
    let bytes = fs::read(path)?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(ArtifactRecord {
        path: String::new(),
        sha256: hex::encode(hasher.finalize()),
        bytes: bytes.len() as u64,
    })
}

impl RunManifest {
    pub fn collect_artifacts(dir: &Path, files: &[PathBuf]) -> std::io::Result<Vec<ArtifactRecord>> {
        let mut records = Vec::new();
        for f in files {
            let mut rec = hash_file(f)?;
            rec.path = f
                .strip_prefix(dir)
                .unwrap_or(f)
                .to_string_lossy()
                .into_owned();
            records.push(rec);
        }
        records.sort_by(|a, b| a.path.cmp(&b.path));
        Ok(records)
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let path = dir.join(MANIFEST_NAME);
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        fs::write(&path, json)?;
        Ok(path)
    }

    pub fn read(dir: &Path) -> anyhow::Result<RunManifest> {
        let path = dir.join(MANIFEST_NAME);
        let text = fs::read_to_string(&path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Strip volatile fields for reproducibility comparison.
    pub fn comparable(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("manifest serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timestamp_unix");
            obj.remove("wall_time_s");
            // output_dir differs between reruns by construction
            if let Some(cfg) = obj.get_mut("config").and_then(|c| c.as_object_mut()) {
                cfg.remove("output_dir");
            }
        }
        v
    }
}

/// Recompute every artifact hash; returns mismatch descriptions (empty means
/// the manifest checks out).
pub fn verify_dir(dir: &Path) -> anyhow::Result<Vec<String>> {
    let manifest = RunManifest::read(dir)?;
    let mut problems = Vec::new();
    for a in &manifest.artifacts {
        let p = dir.join(&a.path);
        match hash_file(&p) {
            Ok(rec) => {
                if rec.sha256 != a.sha256 {
                    problems.push(format!("{}: hash mismatch", a.path));
                } else if rec.bytes != a.bytes {
                    problems.push(format!(
                        "{}: size mismatch ({} vs {})",
                        a.path, rec.bytes, a.bytes
                    ));
                }
            }
            Err(e) => problems.push(format!("{}: {e}", a.path)),
        }
    }
    Ok(problems)
}

pub fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
