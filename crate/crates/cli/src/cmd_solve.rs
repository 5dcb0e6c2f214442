//! `sbm solve`: one solve of one instance, outcome as JSON on stdout.

use std::path::Path;

use anyhow::{Context, Result};
use ising_core::load_instance;
use sbm_engine::SbmParams;

use crate::manifest::{digest_file, RunManifest};

/// Runs the engine once and returns `{manifest, outcome}`. The manifest's
/// parameters are the engine's `params_used`, so the derived coupling
/// prefactor is pinned alongside everything given on the command line.
pub fn cmd_solve(instance: &Path, params: SbmParams) -> Result<serde_json::Value> {
    let model = load_instance(instance)
        .with_context(|| format!("cannot load instance {}", instance.display()))?;
    let outcome = sbm_engine::solve(&model, &params)?;

    let manifest = RunManifest::new(
        "solve",
        Some(params.seed),
        serde_json::to_value(&outcome.params_used).expect("params serialize"),
        vec![digest_file(instance)?],
    );
    Ok(serde_json::json!({
        "manifest": manifest,
        "outcome": outcome,
    }))
}
