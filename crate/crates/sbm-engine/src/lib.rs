//! Discretized simulated-bifurcation solver for Ising models.
//!
//! The dynamics evolve replica positions q and momenta p under a drive
//! that ramps through the bifurcation point, with couplings applied
//! through a ternary discretization of q and perfectly inelastic walls at
//! |q| = 1 (see [`dynamics`]). Replicas run independently from seeded
//! random starting points and are sharded across worker threads; results
//! are bitwise independent of the worker count.

pub mod dynamics;
pub mod error;
pub mod params;
pub mod solver;
pub mod streams;

pub use dynamics::{drive_at, sbm_step, ternary_sign, threshold_at, ReplicaState};
pub use error::EngineError;
pub use params::{resolve_c0, SbmParams, SigmaMode};
pub use solver::{run_replica, solve, solve_with_trace, SolveOutcome};
pub use streams::{derive_seed, hash_label};
