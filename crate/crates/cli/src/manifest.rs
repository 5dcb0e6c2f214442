//! Run manifests: the reproducibility record attached to every command.
//!
//! A manifest pins everything a rerun needs — the command, every parameter
//! after defaults and environment resolution, the master seed, the artifact
//! version, and content digests of all input files. Feeding the recorded
//! parameters back into the same artifact version reproduces all outputs
//! bit-exactly, except wall-clock timings and the manifest's own timestamp.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Content digest of one input file.
#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// The reproducibility record serialized with every command's output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    /// Subcommand that produced the output.
    pub command: String,
    /// Version of this artifact.
    pub artifact_version: String,
    /// Master seed, when the command consumes randomness.
    pub master_seed: Option<u64>,
    /// Every parameter after defaults, unit conversion, and environment
    /// resolution.
    pub parameters: serde_json::Value,
    /// Digests of all input files, in the order they were read.
    pub inputs: Vec<InputDigest>,
    /// RFC 3339 creation time; informational, excluded from reproducibility.
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(
        command: &str,
        master_seed: Option<u64>,
        parameters: serde_json::Value,
        inputs: Vec<InputDigest>,
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            master_seed,
            parameters,
            inputs,
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }

    /// Writes the manifest as pretty JSON to `path`.
    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        fs::write(path, text)
            .with_context(|| format!("cannot write manifest to {}", path.display()))
    }
}

/// SHA-256 digest of a file's contents.
pub fn digest_file(path: &Path) -> Result<InputDigest> {
    let bytes =
        fs::read(path).with_context(|| format!("cannot read input file {}", path.display()))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    let digest = hasher.finalize();
    let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(InputDigest {
        path: path.display().to_string(),
        sha256,
    })
}
