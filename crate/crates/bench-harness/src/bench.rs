//! The measurement protocol: repeated seeded solves, per-instance
//! time-to-epsilon records, and the (N_s, N_r) grid search.

use ising_core::IsingModel;
use sbm_engine::{derive_seed, hash_label, SbmParams, SolveOutcome};

use crate::error::BenchError;
use crate::records::{
    BenchInstance, GridSpec, MedianPoint, ReferencePolicy, RunRecord, TTEpsilonRecord,
    TimingVariant,
};
use crate::stats::{median_with_bootstrap, success_probability, tt_epsilon};

/// Anything that can play the solver role in a benchmark. The production
/// implementation is [`SbmSolver`]; tests inject stubs with controlled
/// energies and timings.
pub trait Solver {
    fn solve(&self, model: &IsingModel, params: &SbmParams) -> Result<SolveOutcome, BenchError>;
}

/// The bifurcation engine behind the [`Solver`] interface.
#[derive(Debug, Default, Clone, Copy)]
pub struct SbmSolver;

impl Solver for SbmSolver {
    fn solve(&self, model: &IsingModel, params: &SbmParams) -> Result<SolveOutcome, BenchError> {
        Ok(sbm_engine::solve(model, params)?)
    }
}

/// Number of bootstrap resamples used by default for median errors.
pub const DEFAULT_BOOTSTRAP_RESAMPLES: u32 = 1000;

/// Execute `n_runs` independent solves of one instance. Run seeds are
/// derived from (params.seed, instance id, run index), so records are
/// reproducible and distinct runs get independent replica streams.
///
/// Runs execute sequentially on the calling thread (the solve itself may
/// use workers); nothing else shares the machine's workers during a
/// solve, which keeps the compute clock honest.
pub fn measure_instance(
    solver: &dyn Solver,
    instance: &BenchInstance,
    params: &SbmParams,
    n_runs: u32,
) -> Result<Vec<RunRecord>, BenchError> {
    if n_runs == 0 {
        return Err(BenchError::NoRuns);
    }
    let id_hash = hash_label(&instance.id);
    let mut records = Vec::with_capacity(n_runs as usize);
    for run_index in 0..n_runs {
        let seed = derive_seed(params.seed, &[id_hash, u64::from(run_index)]);
        let run_params = SbmParams { seed, ..params.clone() };
        let outcome = solver.solve(&instance.model, &run_params)?;
        records.push(RunRecord {
            instance_id: instance.id.clone(),
            run_index,
            seed,
            params: outcome.params_used,
            energy: outcome.best_energy,
            t_total: outcome.t_total,
            t_compute: outcome.t_compute,
        });
    }
    Ok(records)
}

/// Evaluate a set of run records against a reference energy at several
/// optimality gaps: one record per ε with the success probability, mean
/// runtimes, and both time-to-epsilon variants.
pub fn evaluate_runs(
    runs: &[RunRecord],
    e0: f64,
    epsilons: &[f64],
) -> Result<Vec<TTEpsilonRecord>, BenchError> {
    if runs.is_empty() {
        return Err(BenchError::EmptyRuns);
    }
    let energies: Vec<f64> = runs.iter().map(|r| r.energy).collect();
    let mean = |extract: fn(&RunRecord) -> f64| {
        runs.iter().map(extract).sum::<f64>() / runs.len() as f64
    };
    let t_f_total = mean(|r| r.t_total);
    let t_f_compute = mean(|r| r.t_compute);
    let mut records = Vec::with_capacity(epsilons.len());
    for &epsilon in epsilons {
        let p = success_probability(&energies, e0, epsilon)?;
        records.push(TTEpsilonRecord {
            instance_id: runs[0].instance_id.clone(),
            epsilon,
            p_success: p,
            t_f_total,
            t_f_compute,
            tte_total: if p == 0.0 { f64::INFINITY } else { tt_epsilon(t_f_total, p)? },
            tte_compute: if p == 0.0 { f64::INFINITY } else { tt_epsilon(t_f_compute, p)? },
            n_runs: runs.len() as u32,
        });
    }
    Ok(records)
}

/// Full protocol for one instance: repeated solves, then one record per
/// optimality gap. The reference energy comes from the instance metadata.
pub fn benchmark_instance(
    solver: &dyn Solver,
    instance: &BenchInstance,
    params: &SbmParams,
    n_runs: u32,
    epsilons: &[f64],
) -> Result<Vec<TTEpsilonRecord>, BenchError> {
    let e0 = instance
        .model
        .metadata
        .ground_energy
        .ok_or_else(|| BenchError::MissingGroundEnergy { id: instance.id.clone() })?;
    let runs = measure_instance(solver, instance, params, n_runs)?;
    evaluate_runs(&runs, e0, epsilons)
}

/// Raw measurements of one grid cell: `runs[i]` belongs to instance i.
#[derive(Debug, Clone)]
pub struct MeasuredCell {
    pub n_steps: u32,
    pub n_replicas: u32,
    pub runs: Vec<Vec<RunRecord>>,
}

/// All measurements of a grid search, before any ε enters. Keeping the
/// raw records lets several optimality gaps share one (expensive) run
/// set.
#[derive(Debug, Clone)]
pub struct MeasuredGrid {
    pub instance_ids: Vec<String>,
    /// Spin count shared by the instance set.
    pub n: usize,
    pub cells: Vec<MeasuredCell>,
}

/// Run the full grid of (N_s, N_r) cells over an instance set of one
/// size.
pub fn measure_grid(
    solver: &dyn Solver,
    instances: &[BenchInstance],
    grid: &GridSpec,
    base: &SbmParams,
    n_runs: u32,
) -> Result<MeasuredGrid, BenchError> {
    if instances.is_empty() {
        return Err(BenchError::EmptyInstances);
    }
    if grid.n_steps.is_empty() || grid.n_replicas.is_empty() {
        return Err(BenchError::EmptyGrid);
    }
    let n = instances[0].model.n();
    for instance in instances {
        if instance.model.n() != n {
            return Err(BenchError::MixedSizes { first: n, other: instance.model.n() });
        }
    }
    let mut cells = Vec::with_capacity(grid.n_steps.len() * grid.n_replicas.len());
    for &n_steps in &grid.n_steps {
        for &n_replicas in &grid.n_replicas {
            let params = SbmParams { n_steps, n_replicas, ..base.clone() };
            let mut runs = Vec::with_capacity(instances.len());
            for instance in instances {
                runs.push(measure_instance(solver, instance, &params, n_runs)?);
            }
            cells.push(MeasuredCell { n_steps, n_replicas, runs });
        }
    }
    Ok(MeasuredGrid {
        instance_ids: instances.iter().map(|i| i.id.clone()).collect(),
        n,
        cells,
    })
}

/// Per-instance reference energies for a measured grid: certified
/// metadata, or the lowest energy any run found (pooled across cells).
pub fn reference_energies(
    instances: &[BenchInstance],
    measured: &MeasuredGrid,
    policy: ReferencePolicy,
) -> Result<Vec<f64>, BenchError> {
    if instances.len() != measured.instance_ids.len() {
        return Err(BenchError::InstanceMismatch {
            measured: measured.instance_ids.len(),
            supplied: instances.len(),
        });
    }
    match policy {
        ReferencePolicy::Metadata => instances
            .iter()
            .map(|instance| {
                instance.model.metadata.ground_energy.ok_or_else(|| {
                    BenchError::MissingGroundEnergy { id: instance.id.clone() }
                })
            })
            .collect(),
        ReferencePolicy::BestFound => Ok((0..instances.len())
            .map(|index| {
                measured
                    .cells
                    .iter()
                    .flat_map(|cell| &cell.runs[index])
                    .map(|record| record.energy)
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()),
    }
}

/// One grid cell after evaluation at a fixed ε: per-instance records plus
/// the instance-set medians for both clocks.
#[derive(Debug, Clone)]
pub struct CellEvaluation {
    pub n_steps: u32,
    pub n_replicas: u32,
    pub records: Vec<TTEpsilonRecord>,
    pub median_total: f64,
    pub std_total: f64,
    pub median_compute: f64,
    pub std_compute: f64,
    pub finite_total: usize,
    pub finite_compute: usize,
}

/// A completed grid search at one ε.
#[derive(Debug, Clone)]
pub struct GridSearchResult {
    pub best: MedianPoint,
    pub cells: Vec<CellEvaluation>,
}

/// Evaluate every measured cell at one optimality gap and pick the cell
/// minimizing the median TTε under the selected clock. Ties prefer the
/// smaller N_s, then the smaller N_r, making the result independent of
/// the grid enumeration order. If no cell has a finite median the +∞
/// point is returned with `finite_count = 0`.
pub fn evaluate_grid(
    measured: &MeasuredGrid,
    references: &[f64],
    epsilon: f64,
    timing: TimingVariant,
    bootstrap_resamples: u32,
    bootstrap_seed: u64,
) -> Result<GridSearchResult, BenchError> {
    if references.len() != measured.instance_ids.len() {
        return Err(BenchError::InstanceMismatch {
            measured: measured.instance_ids.len(),
            supplied: references.len(),
        });
    }
    let mut cells = Vec::with_capacity(measured.cells.len());
    for cell in &measured.cells {
        let mut records = Vec::with_capacity(cell.runs.len());
        for (runs, &e0) in cell.runs.iter().zip(references) {
            let mut evaluated = evaluate_runs(runs, e0, &[epsilon])?;
            records.push(evaluated.pop().expect("one epsilon yields one record"));
        }
        let totals: Vec<f64> = records.iter().map(|r| r.tte_total).collect();
        let computes: Vec<f64> = records.iter().map(|r| r.tte_compute).collect();
        let (median_total, std_total) =
            median_with_bootstrap(&totals, bootstrap_resamples, bootstrap_seed)?;
        let (median_compute, std_compute) =
            median_with_bootstrap(&computes, bootstrap_resamples, bootstrap_seed)?;
        cells.push(CellEvaluation {
            n_steps: cell.n_steps,
            n_replicas: cell.n_replicas,
            records,
            median_total,
            std_total,
            median_compute,
            std_compute,
            finite_total: totals.iter().filter(|t| t.is_finite()).count(),
            finite_compute: computes.iter().filter(|t| t.is_finite()).count(),
        });
    }

    let key = |cell: &CellEvaluation| match timing {
        TimingVariant::Total => (cell.median_total, cell.n_steps, cell.n_replicas),
        TimingVariant::Compute => (cell.median_compute, cell.n_steps, cell.n_replicas),
    };
    let winner = cells
        .iter()
        .min_by(|a, b| {
            let (ma, sa, ra) = key(a);
            let (mb, sb, rb) = key(b);
            ma.total_cmp(&mb).then(sa.cmp(&sb)).then(ra.cmp(&rb))
        })
        .expect("grid is nonempty");
    let (median, bootstrap_std, finite_count) = match timing {
        TimingVariant::Total => (winner.median_total, winner.std_total, winner.finite_total),
        TimingVariant::Compute => {
            (winner.median_compute, winner.std_compute, winner.finite_compute)
        }
    };
    let best = MedianPoint {
        n: measured.n,
        epsilon,
        median,
        bootstrap_std,
        finite_count,
        set_size: measured.instance_ids.len(),
        n_steps: winner.n_steps,
        n_replicas: winner.n_replicas,
        timing,
    };
    Ok(GridSearchResult { best, cells })
}

/// Measure and evaluate in one call: the paper-style parameter
/// optimization of the instance-set median TTε at one gap.
#[allow(clippy::too_many_arguments)]
pub fn grid_search(
    solver: &dyn Solver,
    instances: &[BenchInstance],
    grid: &GridSpec,
    base: &SbmParams,
    n_runs: u32,
    epsilon: f64,
    timing: TimingVariant,
    reference: ReferencePolicy,
) -> Result<GridSearchResult, BenchError> {
    let measured = measure_grid(solver, instances, grid, base, n_runs)?;
    let references = reference_energies(instances, &measured, reference)?;
    evaluate_grid(
        &measured,
        &references,
        epsilon,
        timing,
        DEFAULT_BOOTSTRAP_RESAMPLES,
        base.seed,
    )
}
