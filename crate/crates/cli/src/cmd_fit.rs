//! `sbm fit`: power-law fits over a median table, one per optimality gap.

use std::fs;
use std::fs::File;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use scaling_analysis::{
    alpha_vs_epsilon, fit_power_law_with, fits_json, import_external_medians,
    write_fit_curve_csv, AnalysisError, EpsilonFit, FitOptions,
};

use crate::manifest::{digest_file, RunManifest};

/// Resolved `sbm fit` arguments; gaps are fractions already.
pub struct FitConfig {
    pub medians: PathBuf,
    pub solver: Option<String>,
    pub epsilons: Option<Vec<f64>>,
    pub range: Option<(f64, f64)>,
    pub weighted: bool,
    pub out: Option<PathBuf>,
}

/// Imports the table, fits every requested gap, and returns
/// `{manifest, solver, fits}`. With `--out`, also writes `fits.json`, one
/// plot-ready `curve-<ε>.csv` per gap, and the manifest.
pub fn cmd_fit(config: &FitConfig) -> Result<serde_json::Value> {
    let table = import_external_medians(&config.medians)
        .with_context(|| format!("cannot import {}", config.medians.display()))?;

    let solver = match &config.solver {
        Some(name) => name.clone(),
        None => {
            let solvers = table.solvers();
            match solvers.as_slice() {
                [] => bail!("median table is empty"),
                [only] => only.to_string(),
                many => bail!(
                    "median table holds {} solvers ({}); pass --solver",
                    many.len(),
                    many.join(", ")
                ),
            }
        }
    };

    let epsilons = match &config.epsilons {
        Some(list) => list.clone(),
        None => table.epsilons(&solver),
    };
    if epsilons.is_empty() {
        bail!("no optimality gaps to fit for solver `{solver}`");
    }

    let fits: Vec<EpsilonFit> = if config.weighted {
        // Weighted fits reuse the per-point bootstrap stds from the table.
        let mut rows = Vec::with_capacity(epsilons.len());
        for &epsilon in &epsilons {
            let series = table.series(&solver, epsilon);
            if series.is_empty() {
                return Err(AnalysisError::MissingSeries {
                    solver: solver.clone(),
                    epsilon,
                }
                .into());
            }
            let fit = fit_power_law_with(
                &series,
                FitOptions {
                    range: config.range,
                    weighted: true,
                },
            )?;
            rows.push(EpsilonFit { epsilon, fit });
        }
        rows
    } else {
        alpha_vs_epsilon(&table, &solver, &epsilons, config.range)?
    };

    let manifest = RunManifest::new(
        "fit",
        None,
        serde_json::json!({
            "medians": config.medians.display().to_string(),
            "solver": solver,
            "epsilons": epsilons,
            "range": config.range,
            "weighted": config.weighted,
        }),
        vec![digest_file(&config.medians)?],
    );

    if let Some(out) = &config.out {
        write_outputs(out, &table, &solver, &fits, &manifest)?;
    }

    Ok(serde_json::json!({
        "manifest": manifest,
        "solver": solver,
        "fits": fits,
    }))
}

fn write_outputs(
    out: &Path,
    table: &scaling_analysis::MedianTable,
    solver: &str,
    fits: &[EpsilonFit],
    manifest: &RunManifest,
) -> Result<()> {
    fs::create_dir_all(out)
        .with_context(|| format!("cannot create output directory {}", out.display()))?;
    fs::write(
        out.join("fits.json"),
        serde_json::to_string_pretty(&fits_json(fits))?,
    )?;
    for row in fits {
        let series = table.series(solver, row.epsilon);
        let path = out.join(format!("curve-{}.csv", row.epsilon));
        write_fit_curve_csv(File::create(&path)?, &series, &row.fit)?;
    }
    manifest.write(&out.join("manifest.json"))?;
    Ok(())
}
