//! Solver hyperparameters and the derived coupling strength c0.

use serde::{Deserialize, Serialize};

use ising_core::IsingModel;

use crate::error::EngineError;

/// Prefactor of the derived coupling strength c0 = 0.7 · a0 / (σ√N).
const C0_PREFACTOR: f64 = 0.7;

/// Which off-diagonal entries enter the coupling spread σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaMode {
    /// All N(N−1) off-diagonal entries of the dense coupling matrix,
    /// structural zeros included (the default reading).
    #[default]
    AllOffDiagonal,
    /// Only the nonzero couplings.
    NonzeroOnly,
}

/// Full hyperparameter set for one solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SbmParams {
    /// Drive ceiling a0; the drive ramps linearly from 0 to this value.
    pub a0: f64,
    /// Explicit coupling strength; when absent c0 = 0.7·a0/(σ√N).
    pub c0_override: Option<f64>,
    /// Closed interval each replica's time step is drawn from.
    pub dt_range: (f64, f64),
    /// Integration steps per replica (N_s).
    pub n_steps: u32,
    /// Independent replicas per solve (N_r).
    pub n_replicas: u32,
    /// Master seed; every replica stream is derived from it.
    pub seed: u64,
    /// Worker threads the replicas are sharded across.
    pub n_workers: usize,
    /// Slope of the discretization threshold Δ(t) = slope·t/T.
    pub ternary_slope: f64,
    /// How σ is computed when c0 is derived.
    pub sigma_mode: SigmaMode,
}

impl Default for SbmParams {
    fn default() -> Self {
        Self {
            a0: 1.0,
            c0_override: None,
            dt_range: (0.25, 1.5),
            n_steps: 1000,
            n_replicas: 32,
            seed: 0,
            n_workers: 1,
            ternary_slope: 0.7,
            sigma_mode: SigmaMode::default(),
        }
    }
}

impl SbmParams {
    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |msg: String| Err(EngineError::InvalidParams(msg));
        if !self.a0.is_finite() || self.a0 <= 0.0 {
            return bad(format!("a0 must be finite and positive, got {}", self.a0));
        }
        let (lo, hi) = self.dt_range;
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || lo > hi {
            return bad(format!("dt range must satisfy 0 < min <= max, got [{lo}, {hi}]"));
        }
        if self.n_steps == 0 {
            return bad("n_steps must be at least 1".into());
        }
        if self.n_replicas == 0 {
            return bad("n_replicas must be at least 1".into());
        }
        if self.n_workers == 0 {
            return bad("n_workers must be at least 1".into());
        }
        if !self.ternary_slope.is_finite() || self.ternary_slope < 0.0 {
            return bad(format!(
                "ternary_slope must be finite and non-negative, got {}",
                self.ternary_slope
            ));
        }
        if let Some(c0) = self.c0_override {
            if !c0.is_finite() || c0 <= 0.0 {
                return bad(format!("c0 must be finite and positive, got {c0}"));
            }
        }
        Ok(())
    }
}

/// The coupling strength actually used: the override if given, otherwise
/// 0.7·a0/(σ√N) with σ the population standard deviation of the
/// off-diagonal coupling matrix entries (selected by `sigma_mode`).
pub fn resolve_c0(model: &IsingModel, params: &SbmParams) -> Result<f64, EngineError> {
    if let Some(c0) = params.c0_override {
        return Ok(c0);
    }
    let n = model.n();
    if n < 2 {
        return Err(EngineError::TooSmallForSigma { n });
    }
    let sigma = coupling_sigma(model, params.sigma_mode)?;
    Ok(C0_PREFACTOR * params.a0 / (sigma * (n as f64).sqrt()))
}

/// Population standard deviation of the selected off-diagonal entries.
/// Each stored coupling occupies two symmetric matrix cells.
fn coupling_sigma(model: &IsingModel, mode: SigmaMode) -> Result<f64, EngineError> {
    let n = model.n() as f64;
    let values: Vec<f64> = model.couplings().iter().map(|c| c.value).collect();
    let (count, sum, sum_sq) = match mode {
        SigmaMode::AllOffDiagonal => {
            let count = n * (n - 1.0);
            let sum: f64 = 2.0 * values.iter().sum::<f64>();
            let sum_sq: f64 = 2.0 * values.iter().map(|v| v * v).sum::<f64>();
            (count, sum, sum_sq)
        }
        SigmaMode::NonzeroOnly => {
            let nonzero: Vec<f64> = values.iter().copied().filter(|&v| v != 0.0).collect();
            let count = 2.0 * nonzero.len() as f64;
            let sum: f64 = 2.0 * nonzero.iter().sum::<f64>();
            let sum_sq: f64 = 2.0 * nonzero.iter().map(|v| v * v).sum::<f64>();
            (count, sum, sum_sq)
        }
    };
    if count == 0.0 {
        return Err(EngineError::DegenerateCouplings);
    }
    let mean = sum / count;
    let variance = (sum_sq / count - mean * mean).max(0.0);
    let sigma = variance.sqrt();
    if sigma == 0.0 {
        return Err(EngineError::DegenerateCouplings);
    }
    Ok(sigma)
}
