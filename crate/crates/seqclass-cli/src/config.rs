//! Config-file merging, seed resolution, input digests, and the
//! reproducibility manifest every run writes.
//!
//! A config file is a JSON object whose keys match the flag names; a run
//! manifest also works (its `args` object is used). Values resolve as
//! flag > config > environment/default, and the manifest records the fully
//! resolved values, so re-running with `--config <manifest>` reproduces the
//! run exactly.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::commands::CliError;

pub struct ConfigFile {
    values: serde_json::Map<String, serde_json::Value>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<ConfigFile, CliError> {
        let Some(path) = path else {
            return Ok(ConfigFile {
                values: serde_json::Map::new(),
            });
        };
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Data(format!("cannot read config {}: {e}", path.display()))
        })?;
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
            CliError::Usage(format!("config {} is not valid JSON: {e}", path.display()))
        })?;
        let object = value.as_object().ok_or_else(|| {
            CliError::Usage(format!("config {} must be a JSON object", path.display()))
        })?;
        // Accept a run manifest directly.
        let values = match object.get("args").and_then(|v| v.as_object()) {
            Some(args) => args.clone(),
            None => object.clone(),
        };
        Ok(ConfigFile { values })
    }

    fn get(&self, key: &str) -> Option<&serde_json::Value> {
        self.values.get(key).filter(|v| !v.is_null())
    }

    fn wrong_type(key: &str, expected: &str) -> CliError {
        CliError::Usage(format!("config key {key:?} must be {expected}"))
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.get(key)
            .map(|v| {
                v.as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| Self::wrong_type(key, "an unsigned integer"))
            })
            .transpose()
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        self.get(key)
            .map(|v| {
                v.as_u64()
                    .ok_or_else(|| Self::wrong_type(key, "an unsigned integer"))
            })
            .transpose()
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.get(key)
            .map(|v| v.as_f64().ok_or_else(|| Self::wrong_type(key, "a number")))
            .transpose()
    }

    pub fn bool(&self, key: &str) -> Result<Option<bool>, CliError> {
        self.get(key)
            .map(|v| v.as_bool().ok_or_else(|| Self::wrong_type(key, "a boolean")))
            .transpose()
    }

    pub fn string(&self, key: &str) -> Result<Option<String>, CliError> {
        self.get(key)
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Self::wrong_type(key, "a string"))
            })
            .transpose()
    }

    pub fn path(&self, key: &str) -> Result<Option<PathBuf>, CliError> {
        Ok(self.string(key)?.map(PathBuf::from))
    }
}

pub fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

pub fn resolve_seed(flag: Option<u64>, cfg: &ConfigFile) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    if let Some(seed) = cfg.u64("seed")? {
        return Ok(seed);
    }
    match std::env::var("SEQCLASS_SEED") {
        Ok(raw) => raw.parse().map_err(|_| {
            CliError::Usage(format!("SEQCLASS_SEED must be an unsigned integer, got {raw:?}"))
        }),
        Err(_) => Ok(42),
    }
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

pub fn input_digest(role: &str, path: &Path) -> Result<InputDigest, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes);
    let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(InputDigest {
        role: role.to_string(),
        path: path.display().to_string(),
        sha256,
    })
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub args: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<String>,
}

/// Writes the manifest next to the primary output unless an explicit path was
/// given; returns where it landed.
pub fn write_manifest(
    explicit: Option<&Path>,
    primary_output: &Path,
    manifest: &RunManifest,
) -> Result<PathBuf, CliError> {
    let path = match explicit {
        Some(p) => p.to_path_buf(),
        None => PathBuf::from(format!("{}.manifest.json", primary_output.display())),
    };
    let json = serde_json::to_string_pretty(manifest)
        .map_err(|e| CliError::Data(format!("cannot serialize manifest: {e}")))?;
    fs::write(&path, json + "\n")
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}
