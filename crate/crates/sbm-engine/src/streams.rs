//! Deterministic per-replica random streams.
//!
//! Every random draw in a solve comes from a stream keyed by
//! (master seed, replica id, purpose). Streams never depend on how
//! replicas are sharded across workers, which is what makes solve output
//! independent of the worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Distinct sub-stream purposes within one replica.
#[derive(Debug, Clone, Copy)]
pub(crate) enum StreamPurpose {
    /// The replica's single time-step draw.
    TimeStep = 1,
    /// Initial position draws.
    InitialPosition = 2,
}

/// SplitMix64 finalizer: a bijective 64-bit mix with good avalanche.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds `parts` into `master` one mix at a time. Used for replica
/// streams here and for per-run seeds in the benchmark harness.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut acc = splitmix64(master);
    for &part in parts {
        acc = splitmix64(acc ^ part);
    }
    acc
}

/// FNV-1a over bytes; lets string identifiers participate in seed
/// derivation deterministically.
pub fn hash_label(label: &str) -> u64 {
    let mut hash = 0xCBF2_9CE4_8422_2325u64;
    for &byte in label.as_bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

/// The ChaCha stream for one (seed, replica, purpose) triple. The full
/// 256-bit key is expanded from the derived state so distinct triples get
/// unrelated streams.
pub(crate) fn replica_stream(seed: u64, replica_id: u32, purpose: StreamPurpose) -> ChaCha8Rng {
    let derived = derive_seed(seed, &[u64::from(replica_id), purpose as u64]);
    let mut key = [0u8; 32];
    let mut word = derived;
    for chunk in key.chunks_exact_mut(8) {
        word = splitmix64(word);
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
