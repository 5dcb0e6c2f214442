//! Benchmark protocol for Ising solvers: repeated seeded solves, success
//! probabilities, time-to-epsilon (TTε), instance-set medians with
//! bootstrap errors, and grid search over the solver's (N_s, N_r)
//! parameters.
//!
//! The central quantity is TTε = t_f · log(1−0.99)/log(1−p): the expected
//! time to reach a solution within a relative optimality gap ε with 99%
//! confidence by repeating runs, where p is the per-run success
//! probability and t_f the mean runtime. Both a wall-clock and a
//! compute-clock variant are tracked throughout.

pub mod bench;
pub mod error;
pub mod output;
pub mod records;
pub mod stats;

pub use bench::{
    benchmark_instance, evaluate_grid, evaluate_runs, grid_search, measure_grid,
    measure_instance, reference_energies, CellEvaluation, GridSearchResult, MeasuredCell,
    MeasuredGrid, SbmSolver, Solver, DEFAULT_BOOTSTRAP_RESAMPLES,
};
pub use error::BenchError;
pub use output::{
    median_points_json, records_json, write_median_points_csv, write_records_csv, SCHEMA_VERSION,
};
pub use records::{
    BenchInstance, GridSpec, MedianPoint, ReferencePolicy, RunRecord, TTEpsilonRecord,
    TimingVariant,
};
pub use stats::{median_with_bootstrap, success_probability, tt_epsilon};
