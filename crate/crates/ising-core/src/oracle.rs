//! Exhaustive ground-state search over all 2^n spin configurations.

use rayon::prelude::*;

use crate::error::ModelError;
use crate::model::{IsingModel, SpinConfig};

/// Hard cap on exhaustive search size; the cost is 2^n.
pub const ORACLE_MAX_SPINS: usize = 30;

/// Enumerate suffixes in blocks of at most 2^16 states; the prefix spins
/// index the blocks, which can be scanned in parallel.
const SUFFIX_BITS_MAX: u32 = 16;

/// Running energies are rebuilt from scratch this often to keep
/// accumulated rounding bounded.
const REFRESH_INTERVAL: u64 = 4096;

/// Exact minimum of the Hamiltonian over all 2^n configurations, with one
/// minimizer. Ties resolve to the lexicographically smallest configuration
/// (-1 ordered before +1). The search space is partitioned across rayon
/// workers; the result does not depend on the worker count.
pub fn brute_force_ground_state(model: &IsingModel) -> Result<(f64, SpinConfig), ModelError> {
    let n = model.n();
    if n > ORACLE_MAX_SPINS {
        return Err(ModelError::TooManySpins {
            n,
            cap: ORACLE_MAX_SPINS,
        });
    }
    let suffix_bits = SUFFIX_BITS_MAX.min(n as u32);
    let prefix_bits = n as u32 - suffix_bits;
    let blocks = 1u64 << prefix_bits;

    let block_results: Vec<(f64, u64)> = (0..blocks)
        .into_par_iter()
        .map(|block| scan_block(model, block, prefix_bits, suffix_bits))
        .collect();

    // Blocks are reduced in prefix order, so the lexicographic tie rule
    // holds globally.
    let mut best = block_results[0];
    for &candidate in &block_results[1..] {
        if candidate.0 < best.0 || (candidate.0 == best.0 && candidate.1 < best.1) {
            best = candidate;
        }
    }
    // The scan tracks energies incrementally; recompute the winner from
    // scratch so the reported minimum is exactly H(argmin).
    let argmin = config_of_rank(best.1, n);
    let energy = model.energy_of_spins(argmin.spins());
    Ok((energy, argmin))
}

/// Scan all suffix assignments for one prefix block via Gray-code flips.
/// Returns the block minimum and the lexicographic rank of its argmin.
fn scan_block(model: &IsingModel, block: u64, prefix_bits: u32, suffix_bits: u32) -> (f64, u64) {
    let n = model.n();
    let adjacency = model.adjacency();
    let fields = model.fields();

    // Prefix spins from the block index (spin 0 most significant), suffix
    // all -1: the lexicographically smallest state of the block.
    let mut spins = vec![-1i8; n];
    for k in 0..prefix_bits {
        if (block >> (prefix_bits - 1 - k)) & 1 == 1 {
            spins[k as usize] = 1;
        }
    }

    let mut energy = model.energy_of_spins(&spins);
    let mut suffix_rank = 0u64;
    let mut best_energy = energy;
    let mut best_suffix_rank = suffix_rank;

    for step in 1u64..(1u64 << suffix_bits) {
        let bit = step.trailing_zeros();
        let spin_index = (prefix_bits + bit) as usize;

        let mut local = fields[spin_index];
        for (neighbor, weight) in adjacency.row(spin_index) {
            local += weight * f64::from(spins[neighbor as usize]);
        }
        energy += 2.0 * f64::from(spins[spin_index]) * local;
        spins[spin_index] = -spins[spin_index];
        suffix_rank ^= 1 << (suffix_bits - 1 - bit);

        if step % REFRESH_INTERVAL == 0 {
            energy = model.energy_of_spins(&spins);
        }

        if energy < best_energy || (energy == best_energy && suffix_rank < best_suffix_rank) {
            best_energy = energy;
            best_suffix_rank = suffix_rank;
        }
    }

    (best_energy, (block << suffix_bits) | best_suffix_rank)
}

/// Configuration whose lexicographic rank is `rank`: spin `i` is +1 when
/// bit `n - 1 - i` of the rank is set.
fn config_of_rank(rank: u64, n: usize) -> SpinConfig {
    let spins = (0..n)
        .map(|i| if (rank >> (n - 1 - i)) & 1 == 1 { 1 } else { -1 })
        .collect();
    SpinConfig::new(spins).expect("spins are +/-1 by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ferromagnetic_pair_breaks_tie_lexicographically() {
        let model = IsingModel::from_couplings(2, vec![(0, 1, 1.0)]).unwrap();
        let (energy, argmin) = brute_force_ground_state(&model).unwrap();
        assert_eq!(energy, -1.0);
        // (+1,+1) and (-1,-1) are degenerate; -1 sorts first.
        assert_eq!(argmin.spins(), &[-1, -1]);
    }

    #[test]
    fn single_spin_with_field() {
        let model = IsingModel::new(1, vec![], vec![1.0]).unwrap();
        let (energy, argmin) = brute_force_ground_state(&model).unwrap();
        assert_eq!(energy, -1.0);
        assert_eq!(argmin.spins(), &[1]);
    }

    #[test]
    fn refuses_oversized_models() {
        let model = IsingModel::from_couplings(31, vec![(0, 1, 1.0)]).unwrap();
        assert!(matches!(
            brute_force_ground_state(&model),
            Err(ModelError::TooManySpins { n: 31, cap: 30 })
        ));
    }

    #[test]
    fn argmin_energy_matches_reported_minimum() {
        let model = crate::sidon::generate_sidon_instance(10, &crate::graphs::kings_graph(2, 5), 3)
            .unwrap();
        let (energy, argmin) = brute_force_ground_state(&model).unwrap();
        assert_eq!(model.energy(&argmin).unwrap(), energy);
    }

    #[test]
    fn result_is_independent_of_worker_count() {
        // n = 18 forces multiple blocks.
        let model = crate::sidon::generate_sidon_instance(18, &crate::graphs::kings_graph(3, 6), 8)
            .unwrap();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| brute_force_ground_state(&model).unwrap());
        let several = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap()
            .install(|| brute_force_ground_state(&model).unwrap());
        assert_eq!(single.0, several.0);
        assert_eq!(single.1, several.1);
    }
}
