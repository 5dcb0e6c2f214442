//! Success probability, time-to-epsilon, and extended-real medians.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::BenchError;

/// Target confidence of the time-to-epsilon repeat factor: the runtime is
/// scaled to reach a 99% chance of at least one success.
const TARGET_CONFIDENCE: f64 = 0.99;

/// Fraction of runs achieving E ≤ E0 + ε·|E0|.
pub fn success_probability(energies: &[f64], e0: f64, epsilon: f64) -> Result<f64, BenchError> {
    if energies.is_empty() {
        return Err(BenchError::EmptyRuns);
    }
    if !e0.is_finite() {
        return Err(BenchError::NonFiniteReference { value: e0 });
    }
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(BenchError::InvalidEpsilon { epsilon });
    }
    let threshold = e0 + epsilon * e0.abs();
    let hits = energies.iter().filter(|&&e| e <= threshold).count();
    Ok(hits as f64 / energies.len() as f64)
}

/// Expected time to reach the target confidence by repetition:
/// t_f · log(1−0.99)/log(1−p), with the repeat factor floored at 1.
///
/// p ≥ 0.99 returns t_f exactly — a single run already meets the target,
/// and the branch keeps the floor exact where the float quotient
/// log(0.01)/log(1−0.99) would drift by an ulp. p = 0 returns +∞.
pub fn tt_epsilon(t_f: f64, p: f64) -> Result<f64, BenchError> {
    if !(t_f > 0.0) || !t_f.is_finite() {
        return Err(BenchError::NonPositiveRuntime { t_f });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(BenchError::InvalidProbability { p });
    }
    if p == 0.0 {
        return Ok(f64::INFINITY);
    }
    if p >= TARGET_CONFIDENCE {
        return Ok(t_f);
    }
    let repeat_factor = (1.0 - TARGET_CONFIDENCE).ln() / (1.0 - p).ln();
    Ok(t_f * repeat_factor.max(1.0))
}

/// Midpoint-convention median of a sorted, NaN-free slice; +∞ entries
/// sort as maximal, and a midpoint with +∞ is +∞.
fn median_of_sorted(sorted: &[f64]) -> f64 {
    let len = sorted.len();
    if len % 2 == 1 {
        sorted[len / 2]
    } else {
        let lower = sorted[len / 2 - 1];
        let upper = sorted[len / 2];
        if upper.is_infinite() {
            if lower.is_infinite() { lower } else { f64::INFINITY }
        } else {
            (lower + upper) / 2.0
        }
    }
}

/// Median over extended reals plus the bootstrap standard deviation of
/// the median (resampling with replacement, `resamples` rounds, size
/// preserved). Deterministic in `seed` and invariant under permutation of
/// `values`. The std of resampled medians that mix finite and infinite
/// values is +∞; of all-equal medians, 0.
pub fn median_with_bootstrap(
    values: &[f64],
    resamples: u32,
    seed: u64,
) -> Result<(f64, f64), BenchError> {
    if values.is_empty() {
        return Err(BenchError::EmptyValues);
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(BenchError::NanValue);
    }
    if resamples == 0 {
        return Err(BenchError::NoResamples);
    }
    // Sorting first makes the resampling indices hit a canonical order,
    // so permuting the input cannot change the result.
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = median_of_sorted(&sorted);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut resampled = Vec::with_capacity(resamples as usize);
    let mut sample = vec![0.0; sorted.len()];
    for _ in 0..resamples {
        for slot in &mut sample {
            *slot = sorted[rng.random_range(0..sorted.len())];
        }
        sample.sort_by(f64::total_cmp);
        resampled.push(median_of_sorted(&sample));
    }

    let all_equal = resampled.windows(2).all(|w| w[0] == w[1]);
    let std = if all_equal {
        0.0
    } else if resampled.iter().any(|m| m.is_infinite()) {
        f64::INFINITY
    } else {
        let mean = resampled.iter().sum::<f64>() / resampled.len() as f64;
        let variance = resampled.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>()
            / resampled.len() as f64;
        variance.sqrt()
    };
    Ok((median, std))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn success_probability_thresholds() {
        let at_reference = vec![-100.0; 100];
        for epsilon in [0.0, 0.01, 0.5, 2.0] {
            assert_eq!(success_probability(&at_reference, -100.0, epsilon).unwrap(), 1.0);
        }
        // threshold = -100 + 0.01·100 = -99: two of three runs qualify.
        let runs = [-100.0, -99.5, -98.0];
        assert_eq!(success_probability(&runs, -100.0, 0.01).unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn success_probability_matches_a_recount_and_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let e0 = -50.0;
        let energies: Vec<f64> = (0..200).map(|_| e0 + rng.random_range(0.0..5.0)).collect();
        let mut previous = 0.0;
        for epsilon in [0.0, 0.01, 0.02, 0.04, 0.08, 0.2] {
            let p = success_probability(&energies, e0, epsilon).unwrap();
            let recount = energies
                .iter()
                .filter(|&&e| e <= e0 + epsilon * e0.abs())
                .count() as f64
                / energies.len() as f64;
            assert_eq!(p, recount);
            assert!(p >= previous, "p must be nondecreasing in epsilon");
            previous = p;
        }
    }

    #[test]
    fn success_probability_rejects_bad_input() {
        assert!(matches!(
            success_probability(&[], -1.0, 0.0),
            Err(BenchError::EmptyRuns)
        ));
        assert!(success_probability(&[-1.0], f64::INFINITY, 0.0).is_err());
        assert!(success_probability(&[-1.0], -1.0, -0.1).is_err());
    }

    #[test]
    fn tt_epsilon_limit_conventions() {
        assert_eq!(tt_epsilon(3.5, 0.99).unwrap(), 3.5); // exactly t_f
        assert_eq!(tt_epsilon(3.5, 1.0).unwrap(), 3.5);
        assert_eq!(tt_epsilon(3.5, 0.9999).unwrap(), 3.5);
        assert!(tt_epsilon(3.5, 0.0).unwrap().is_infinite());
    }

    #[test]
    fn tt_epsilon_evaluates_the_repeat_factor() {
        // p = 0.5: factor log(0.01)/log(0.5) ≈ 6.6439.
        let tte = tt_epsilon(2.0, 0.5).unwrap();
        let expected = 2.0 * (0.01f64.ln() / 0.5f64.ln());
        assert_eq!(tte, expected);
        assert!((tte / 2.0 - 6.6439).abs() < 1e-4);
    }

    #[test]
    fn tt_epsilon_is_monotone_in_p_and_linear_in_t_f() {
        let mut previous = f64::INFINITY;
        for k in 1..=100 {
            let p = f64::from(k) / 100.0;
            let tte = tt_epsilon(1.0, p).unwrap();
            assert!(tte <= previous, "TTε must not increase with p");
            previous = tte;
        }
        let unit = tt_epsilon(1.0, 0.3).unwrap();
        for t_f in [0.5, 2.0, 7.25] {
            assert_eq!(tt_epsilon(t_f, 0.3).unwrap(), t_f * unit);
        }
    }

    #[test]
    fn tt_epsilon_rejects_bad_runtimes_and_probabilities() {
        assert!(matches!(
            tt_epsilon(0.0, 0.5),
            Err(BenchError::NonPositiveRuntime { .. })
        ));
        assert!(tt_epsilon(-1.0, 0.5).is_err());
        assert!(tt_epsilon(f64::NAN, 0.5).is_err());
        assert!(tt_epsilon(1.0, -0.1).is_err());
        assert!(tt_epsilon(1.0, 1.1).is_err());
    }

    #[test]
    fn median_conventions_over_extended_reals() {
        let m = |v: &[f64]| median_with_bootstrap(v, 10, 1).unwrap().0;
        assert_eq!(m(&[1.0, 2.0, 3.0]), 2.0);
        assert_eq!(m(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(m(&[1.0, f64::INFINITY, f64::INFINITY]), f64::INFINITY);
        assert_eq!(m(&[1.0, 2.0, f64::INFINITY]), 2.0);
        assert_eq!(m(&[1.0, 2.0, 3.0, 4.0]), 2.5);
        assert_eq!(m(&[1.0, f64::INFINITY]), f64::INFINITY);
        assert_eq!(m(&[5.0]), 5.0);
    }

    #[test]
    fn constant_values_have_zero_bootstrap_std() {
        for b in [1, 10, 500] {
            let (median, std) = median_with_bootstrap(&[4.0; 9], b, 3).unwrap();
            assert_eq!(median, 4.0);
            assert_eq!(std, 0.0);
        }
        let (median, std) = median_with_bootstrap(&[f64::INFINITY; 5], 100, 3).unwrap();
        assert!(median.is_infinite());
        assert_eq!(std, 0.0);
    }

    #[test]
    fn mixed_finite_and_infinite_medians_give_infinite_std() {
        let values = [1.0, f64::INFINITY];
        let (median, std) = median_with_bootstrap(&values, 200, 5).unwrap();
        assert!(median.is_infinite());
        assert!(std.is_infinite());
    }

    #[test]
    fn bootstrap_is_deterministic_and_permutation_invariant() {
        let values = [3.0, 1.0, 4.0, 1.5, 9.0, 2.6, 5.0];
        let mut shuffled = values;
        shuffled.reverse();
        shuffled.swap(1, 4);
        let a = median_with_bootstrap(&values, 300, 42).unwrap();
        let b = median_with_bootstrap(&shuffled, 300, 42).unwrap();
        assert_eq!(a.0.to_bits(), b.0.to_bits());
        assert_eq!(a.1.to_bits(), b.1.to_bits());
        let c = median_with_bootstrap(&values, 300, 43).unwrap();
        assert_ne!(a.1.to_bits(), c.1.to_bits());
    }

    #[test]
    fn bootstrap_std_tracks_sample_spread() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let tight: Vec<f64> = (0..50).map(|_| 10.0 + rng.random_range(-0.1..0.1)).collect();
        let wide: Vec<f64> = (0..50).map(|_| 10.0 + rng.random_range(-5.0..5.0)).collect();
        let (_, std_tight) = median_with_bootstrap(&tight, 400, 7).unwrap();
        let (_, std_wide) = median_with_bootstrap(&wide, 400, 7).unwrap();
        assert!(std_tight < std_wide);
        assert!(std_tight > 0.0);
    }

    #[test]
    fn median_rejects_empty_nan_and_zero_resamples() {
        assert!(matches!(
            median_with_bootstrap(&[], 10, 0),
            Err(BenchError::EmptyValues)
        ));
        assert!(matches!(
            median_with_bootstrap(&[1.0, f64::NAN], 10, 0),
            Err(BenchError::NanValue)
        ));
        assert!(matches!(
            median_with_bootstrap(&[1.0], 0, 0),
            Err(BenchError::NoResamples)
        ));
    }
}
