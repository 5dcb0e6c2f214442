//! `sbm oracle`: certify an instance's ground energy by exhaustive search
//! and write it into the file's metadata header.

use std::path::Path;

use anyhow::{Context, Result};
use ising_core::{brute_force_ground_state, load_instance, save_instance};

use crate::manifest::{digest_file, RunManifest};

/// Exhaustively certifies the instance at `path`, rewrites the file with
/// `E0` set, and returns the certification as JSON. Instances beyond the
/// enumeration cap are refused (the underlying error explains the limit).
///
/// Rerunning is idempotent: the search is deterministic, so the second
/// pass writes the same bytes it read.
pub fn cmd_oracle(path: &Path) -> Result<serde_json::Value> {
    let input_digest = digest_file(path)?;
    let mut model = load_instance(path)
        .with_context(|| format!("cannot load instance {}", path.display()))?;
    let (ground_energy, ground_spins) = brute_force_ground_state(&model)?;
    model.metadata.ground_energy = Some(ground_energy);
    save_instance(&model, path)
        .with_context(|| format!("cannot rewrite instance {}", path.display()))?;

    let manifest = RunManifest::new(
        "oracle",
        None,
        serde_json::json!({
            "instance": path.display().to_string(),
            "n": model.n(),
        }),
        vec![input_digest],
    );
    Ok(serde_json::json!({
        "manifest": manifest,
        "ground_energy": ground_energy,
        "ground_spins": ground_spins,
    }))
}
