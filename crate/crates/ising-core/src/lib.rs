//! Ising model representation and exact tooling.
//!
//! A model is a set of pairwise couplings `J_ij` and per-spin fields `h_i`
//! over spins `s_i ∈ {-1, +1}`, with energy
//!
//! ```text
//! H(s) = - Σ_{i<j} J_ij s_i s_j - Σ_i h_i s_i
//! ```
//!
//! The crate provides the model type with a CSR adjacency view, a QUBO
//! reduction, benchmark instance generators (complete and king's graphs
//! with Sidon-set couplings), an exhaustive ground-state oracle for small
//! instances, and a plain-text instance file format.

pub mod error;
pub mod graphs;
pub mod io;
pub mod model;
pub mod oracle;
pub mod qubo;
pub mod sidon;

pub use error::ModelError;
pub use graphs::{complete_graph, kings_graph};
pub use io::{load_instance, load_instance_with, save_instance, FileError, IndexBase};
pub use model::{Adjacency, Coupling, IsingModel, ModelMetadata, SpinConfig};
pub use oracle::{brute_force_ground_state, ORACLE_MAX_SPINS};
pub use qubo::{qubo_to_ising, QuboEntry, QuboProblem};
pub use sidon::{generate_sidon_instance, SIDON_28_VALUES};
