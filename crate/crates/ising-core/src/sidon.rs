//! Random spin-glass instance generation on a fixed graph.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::ModelError;
use crate::model::IsingModel;

/// The Sidon-28 coupling values, +/-{8/28, 13/28, 19/28, 1}.
pub const SIDON_28_VALUES: [f64; 8] = [
    -1.0,
    -19.0 / 28.0,
    -13.0 / 28.0,
    -8.0 / 28.0,
    8.0 / 28.0,
    13.0 / 28.0,
    19.0 / 28.0,
    1.0,
];

/// Draw one coupling per edge uniformly from [`SIDON_28_VALUES`].
///
/// Fields are zero. Deterministic for a fixed seed and edge order;
/// self-loops and duplicate edges are rejected.
pub fn generate_sidon_instance(
    n: usize,
    edges: &[(usize, usize)],
    seed: u64,
) -> Result<IsingModel, ModelError> {
    for &(u, v) in edges {
        if u == v {
            return Err(ModelError::SelfLoop { index: u });
        }
    }
    let mut seen: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    seen.sort_unstable();
    for w in seen.windows(2) {
        if w[0] == w[1] {
            return Err(ModelError::DuplicateEdge {
                i: w[0].0,
                j: w[0].1,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let couplings = edges
        .iter()
        .map(|&(u, v)| (u, v, SIDON_28_VALUES[rng.random_range(0..SIDON_28_VALUES.len())]))
        .collect();
    IsingModel::from_couplings(n, couplings)
}
