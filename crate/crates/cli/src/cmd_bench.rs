//! `sbm bench`: the full measurement protocol over a directory of
//! instances — per-size grid search, TTε records at every optimality gap,
//! and median summary tables ready for fitting.

use std::collections::BTreeMap;
use std::fs;
use std::fs::File;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bench_harness::{
    evaluate_grid, measure_grid, median_points_json, records_json, reference_energies,
    write_median_points_csv, write_records_csv, BenchInstance, CellEvaluation, GridSpec,
    MedianPoint, ReferencePolicy, SbmSolver, TimingVariant, DEFAULT_BOOTSTRAP_RESAMPLES,
};
use ising_core::load_instance;
use sbm_engine::{derive_seed, hash_label, SbmParams};
use scaling_analysis::{export_medians, MedianRow, MedianTable};

use crate::manifest::{digest_file, InputDigest, RunManifest};

/// Everything `sbm bench` needs, resolved to internal units (gaps are
/// fractions here; the percent conversion happens at argument parsing).
pub struct BenchConfig {
    pub instance_dir: PathBuf,
    pub out_dir: PathBuf,
    pub epsilons: Vec<f64>,
    pub n_runs: u32,
    pub grid: GridSpec,
    pub timing: TimingVariant,
    pub reference: ReferencePolicy,
    pub base: SbmParams,
}

/// Runs the protocol and writes all outputs into a fresh timestamped
/// subdirectory of `out_dir`:
///
/// * `records.csv` / `records.json` — one row per (instance, ε, grid cell),
/// * `medians.csv` / `medians.json` — the winning cell's median per (N, ε),
/// * `medians_export.csv` — the same medians in the external
///   `solver,n,epsilon,median,std` schema, ready for `sbm fit`,
/// * `manifest.json` — the reproducibility record.
///
/// Instances are grouped by spin count and each group is grid-searched
/// independently; run sets are shared across the ε list.
pub fn cmd_bench(config: &BenchConfig) -> Result<serde_json::Value> {
    if config.epsilons.is_empty() {
        bail!("at least one optimality gap is required");
    }
    let (instances, inputs) = load_instances(&config.instance_dir)?;
    if instances.is_empty() {
        bail!(
            "no instance files (*.txt) in {}",
            config.instance_dir.display()
        );
    }

    let mut groups: BTreeMap<usize, Vec<BenchInstance>> = BTreeMap::new();
    for instance in instances {
        groups.entry(instance.model.n()).or_default().push(instance);
    }

    let run_dir = create_run_dir(&config.out_dir)?;

    let solver = SbmSolver;
    let mut all_cells: Vec<CellEvaluation> = Vec::new();
    let mut points: Vec<MedianPoint> = Vec::new();
    for (&n, group) in &groups {
        let measured = measure_grid(&solver, group, &config.grid, &config.base, config.n_runs)?;
        let references = reference_energies(group, &measured, config.reference)?;
        // One bootstrap stream per instance-size group, independent of the
        // ε list and of any other group.
        let bootstrap_seed = derive_seed(config.base.seed, &[hash_label("bootstrap"), n as u64]);
        for &epsilon in &config.epsilons {
            let result = evaluate_grid(
                &measured,
                &references,
                epsilon,
                config.timing,
                DEFAULT_BOOTSTRAP_RESAMPLES,
                bootstrap_seed,
            )?;
            points.push(result.best);
            all_cells.extend(result.cells);
        }
    }

    write_records_csv(File::create(run_dir.join("records.csv"))?, &all_cells)?;
    write_median_points_csv(File::create(run_dir.join("medians.csv"))?, &points)?;
    fs::write(
        run_dir.join("records.json"),
        serde_json::to_string_pretty(&records_json(&all_cells))?,
    )?;
    let medians_json = median_points_json(&points);
    fs::write(
        run_dir.join("medians.json"),
        serde_json::to_string_pretty(&medians_json)?,
    )?;

    let export_rows: Vec<MedianRow> = points
        .iter()
        .map(|point| MedianRow {
            solver: "sbm".to_string(),
            n: point.n,
            epsilon: point.epsilon,
            median: point.median,
            std: point.bootstrap_std,
        })
        .collect();
    let export_table = MedianTable::new(export_rows)?;
    export_medians(run_dir.join("medians_export.csv"), &export_table)?;

    let manifest = RunManifest::new(
        "bench",
        Some(config.base.seed),
        serde_json::json!({
            "instance_dir": config.instance_dir.display().to_string(),
            "out_dir": config.out_dir.display().to_string(),
            "epsilons": config.epsilons,
            "n_runs": config.n_runs,
            "grid_steps": config.grid.n_steps,
            "grid_replicas": config.grid.n_replicas,
            "timing": config.timing.to_string(),
            "reference": match config.reference {
                ReferencePolicy::Metadata => "metadata",
                ReferencePolicy::BestFound => "best-found",
            },
            "base": serde_json::to_value(&config.base)?,
        }),
        inputs,
    );
    manifest.write(&run_dir.join("manifest.json"))?;

    Ok(serde_json::json!({
        "manifest": manifest,
        "out_dir": run_dir.display().to_string(),
        "median_points": medians_json,
    }))
}

/// Loads every `*.txt` file of a directory as an instance, sorted by file
/// name; the instance id is the file stem.
fn load_instances(dir: &Path) -> Result<(Vec<BenchInstance>, Vec<InputDigest>)> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read instance directory {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|path| path.extension().is_some_and(|ext| ext == "txt"))
        .collect();
    paths.sort();

    let mut instances = Vec::with_capacity(paths.len());
    let mut inputs = Vec::with_capacity(paths.len());
    for path in &paths {
        let model = load_instance(path)
            .with_context(|| format!("cannot load instance {}", path.display()))?;
        let id = path
            .file_stem()
            .and_then(|stem| stem.to_str())
            .map(str::to_string)
            .with_context(|| format!("instance file name is not valid UTF-8: {}", path.display()))?;
        inputs.push(digest_file(path)?);
        instances.push(BenchInstance { id, model });
    }
    Ok((instances, inputs))
}

/// Creates a fresh `bench-<timestamp>` subdirectory; a collision (two
/// benches in the same millisecond) gets a numeric suffix.
fn create_run_dir(out_dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create output directory {}", out_dir.display()))?;
    let stamp = chrono::Utc::now().format("bench-%Y%m%dT%H%M%S%3fZ").to_string();
    for attempt in 0..100u32 {
        let candidate = if attempt == 0 {
            out_dir.join(&stamp)
        } else {
            out_dir.join(format!("{stamp}-{attempt}"))
        };
        match fs::create_dir(&candidate) {
            Ok(()) => return Ok(candidate),
            Err(err) if err.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(err) => {
                return Err(err).with_context(|| {
                    format!("cannot create run directory {}", candidate.display())
                })
            }
        }
    }
    bail!("cannot find a free run directory name under {}", out_dir.display());
}
