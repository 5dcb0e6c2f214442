//! Data shapes of the benchmark protocol.

use serde::{Deserialize, Serialize};

use ising_core::IsingModel;
use sbm_engine::SbmParams;

/// A model plus the stable identifier run seeds are derived from.
#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub id: String,
    pub model: IsingModel,
}

impl BenchInstance {
    pub fn new(id: impl Into<String>, model: IsingModel) -> Self {
        Self { id: id.into(), model }
    }
}

/// One solve inside a benchmark: the achieved energy and both clocks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: String,
    pub run_index: u32,
    /// The derived seed this run's solve used.
    pub seed: u64,
    /// Parameters as resolved by the solver (c0 filled in).
    pub params: SbmParams,
    pub energy: f64,
    pub t_total: f64,
    pub t_compute: f64,
}

/// Per-instance time-to-epsilon summary at one optimality gap.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TTEpsilonRecord {
    pub instance_id: String,
    /// Relative optimality gap, a dimensionless fraction.
    pub epsilon: f64,
    pub p_success: f64,
    /// Mean wall-clock runtime over the runs, seconds.
    pub t_f_total: f64,
    /// Mean compute-clock runtime over the runs, seconds.
    pub t_f_compute: f64,
    /// Time-to-epsilon from the wall clock; +∞ when no run succeeded.
    pub tte_total: f64,
    /// Time-to-epsilon from the compute clock; +∞ when no run succeeded.
    pub tte_compute: f64,
    pub n_runs: u32,
}

/// Which clock a grid search optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TimingVariant {
    #[default]
    Total,
    Compute,
}

impl std::fmt::Display for TimingVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TimingVariant::Total => write!(f, "total"),
            TimingVariant::Compute => write!(f, "compute"),
        }
    }
}

/// Where the per-instance reference energy E0 comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ReferencePolicy {
    /// Certified ground energy from instance metadata.
    #[default]
    Metadata,
    /// Lowest energy seen across every run of the measurement (the
    /// reference for sizes beyond exhaustive certification).
    BestFound,
}

/// The instance-set median at one (size, ε) after parameter optimization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MedianPoint {
    /// Spin count shared by the instance set.
    pub n: usize,
    pub epsilon: f64,
    /// Median TTε over instances under the selected clock; +∞ if unsolved.
    pub median: f64,
    /// Bootstrap standard deviation of the median.
    pub bootstrap_std: f64,
    /// Instances whose TTε was finite under the selected clock.
    pub finite_count: usize,
    /// Size of the instance set.
    pub set_size: usize,
    /// Winning grid cell.
    pub n_steps: u32,
    pub n_replicas: u32,
    /// The clock that was optimized.
    pub timing: TimingVariant,
}

impl MedianPoint {
    /// True when no instance had a finite TTε anywhere in the grid cell.
    pub fn unsolved(&self) -> bool {
        self.finite_count == 0
    }
}

/// Hyperparameter grid for the search over (N_s, N_r).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_steps: Vec<u32>,
    pub n_replicas: Vec<u32>,
}

impl Default for GridSpec {
    /// Geometric grids bracketing the optima seen in practice.
    fn default() -> Self {
        Self {
            n_steps: vec![32, 64, 128, 256, 512, 1024, 2048, 4096],
            n_replicas: vec![16, 32, 64, 128, 256, 512, 1024],
        }
    }
}
