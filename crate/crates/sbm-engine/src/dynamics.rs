//! The discretized bifurcation dynamics: one symplectic-Euler step with
//! ternary coupling discretization and inelastic walls at |q| = 1.
//!
//! Per step, at start time t = step_index·dt with horizon T = n_steps·dt:
//!
//! ```text
//! p_i += dt · ( -[a0 - a(t)]·q_i + c0·( Σ_j J_ij·f(q_j) + h_i ) )
//! q_i += dt · a0 · p_i
//! wall: |q_i| > 1  →  q_i = sign(q_i), p_i = 0
//! ```
//!
//! where a(t) = a0·t/T ramps the drive through the bifurcation,
//! f(x) = ternary_sign(x, Δ(t)) with Δ(t) = ternary_slope·t/T, and f is
//! evaluated at the pre-update positions.

use ising_core::IsingModel;

use crate::error::EngineError;
use crate::params::SbmParams;

/// Ternary discretization: 0 inside the band |x| ≤ threshold (boundary
/// inclusive), otherwise the sign of x.
#[inline]
pub fn ternary_sign(x: f64, threshold: f64) -> f64 {
    debug_assert!(threshold >= 0.0);
    if x.abs() <= threshold {
        0.0
    } else if x > 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Drive schedule a(t) = a0·t/T: zero at the start, a0 at the horizon.
#[inline]
pub fn drive_at(a0: f64, t: f64, total_time: f64) -> f64 {
    a0 * (t / total_time)
}

/// Discretization threshold Δ(t) = slope·t/T.
#[inline]
pub fn threshold_at(slope: f64, t: f64, total_time: f64) -> f64 {
    slope * (t / total_time)
}

/// Position/momentum state of one replica mid-trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicaState {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    /// This replica's time step, drawn once at replica start.
    pub dt: f64,
    /// Completed steps, in [0, n_steps].
    pub step_index: u32,
}

impl ReplicaState {
    pub fn new(n: usize, dt: f64) -> Self {
        Self {
            q: vec![0.0; n],
            p: vec![0.0; n],
            dt,
            step_index: 0,
        }
    }
}

/// Advance one step. Allocates its own discretization buffer; the solver
/// loop uses [`step_with_scratch`] to reuse one.
pub fn sbm_step(
    model: &IsingModel,
    state: &mut ReplicaState,
    params: &SbmParams,
    c0: f64,
) -> Result<(), EngineError> {
    let mut scratch = vec![0.0; model.n()];
    step_with_scratch(model, state, params, c0, &mut scratch)
}

/// One symplectic-Euler update (see module docs). `scratch` holds the
/// discretized positions f(q_j) and must have length n.
pub fn step_with_scratch(
    model: &IsingModel,
    state: &mut ReplicaState,
    params: &SbmParams,
    c0: f64,
    scratch: &mut [f64],
) -> Result<(), EngineError> {
    let n = model.n();
    debug_assert!(state.step_index < params.n_steps);
    debug_assert_eq!(state.q.len(), n);
    debug_assert_eq!(scratch.len(), n);

    let dt = state.dt;
    let t = f64::from(state.step_index) * dt;
    let total_time = f64::from(params.n_steps) * dt;
    let decay = params.a0 - drive_at(params.a0, t, total_time);
    let delta = threshold_at(params.ternary_slope, t, total_time);

    // Discretize the pre-update positions once; the momentum update below
    // must see f at the old q for every spin.
    for (slot, &q) in scratch.iter_mut().zip(&state.q) {
        *slot = ternary_sign(q, delta);
    }

    let (offsets, neighbors, weights) = model.adjacency().raw();
    let fields = model.fields();

    // `probe` accumulates pre-wall values: the wall would clamp an
    // overflowed q back into range, so finiteness is checked before it.
    let mut probe = 0.0f64;
    for i in 0..n {
        let mut force = fields[i];
        let row = offsets[i]..offsets[i + 1];
        for (&j, &w) in neighbors[row.clone()].iter().zip(&weights[row]) {
            force += w * scratch[j as usize];
        }
        let p = state.p[i] + dt * (c0 * force - decay * state.q[i]);
        state.p[i] = p;
        probe += p;
    }
    for i in 0..n {
        let q = state.q[i] + dt * params.a0 * state.p[i];
        probe += q;
        if q.abs() > 1.0 {
            state.q[i] = if q >= 0.0 { 1.0 } else { -1.0 };
            state.p[i] = 0.0;
        } else {
            state.q[i] = q;
        }
    }
    if !probe.is_finite() {
        return Err(EngineError::NonFiniteStep {
            step: state.step_index,
        });
    }
    state.step_index += 1;
    Ok(())
}
