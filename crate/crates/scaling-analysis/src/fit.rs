//! Power-law fits of median time-to-epsilon against instance size.
//!
//! The model is `median ≈ 10^b · N^α`, fitted as a straight line in log₁₀-log₁₀
//! space by ordinary least squares (slope `α`, intercept `b`). Base-10 logs are
//! used throughout to match log-log plotting conventions; the recovered exponent
//! is independent of the base.
//!
//! Unsolved sizes (infinite medians) carry no log-space coordinate. They are
//! excluded from the regression but counted, and a fit is flagged unreliable
//! when more than 20% of the in-range points were infinite — an exponent fitted
//! through the few sizes that happened to finish says little about the rest.
//!
//! Two slope uncertainties are computed and labeled separately, because they
//! answer different questions:
//!
//! - [`PowerLawFit::alpha_std`] is the residual-based OLS standard error: how
//!   much the slope would wobble if the scatter we actually observed were noise.
//! - [`PowerLawFit::alpha_std_propagated`] pushes the per-point bootstrap stds
//!   of the medians through the fit (delta method), answering how much the
//!   slope wobbles given the sampling error of each median estimate. It is
//!   present only when every used point carries a finite std.

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;

/// One (size, median) observation, optionally with the bootstrap std of the
/// median estimate (in linear space, same units as the median).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitPoint {
    /// Instance size N.
    pub n: f64,
    /// Median time-to-epsilon at this size. Positive finite, or +inf when the
    /// size was unsolved at this tolerance.
    pub median: f64,
    /// Bootstrap std of the median, if known.
    pub std: Option<f64>,
}

impl FitPoint {
    /// Convenience constructor for a point without an uncertainty estimate.
    pub fn new(n: f64, median: f64) -> Self {
        FitPoint {
            n,
            median,
            std: None,
        }
    }

    /// Convenience constructor for a point with a bootstrap std.
    pub fn with_std(n: f64, median: f64, std: f64) -> Self {
        FitPoint {
            n,
            median,
            std: Some(std),
        }
    }
}

/// Options controlling a power-law fit.
#[derive(Debug, Clone, Copy, Default)]
pub struct FitOptions {
    /// Inclusive size range `[min, max]`; points outside are ignored.
    /// `None` uses every point.
    pub range: Option<(f64, f64)>,
    /// Weight each point by `1/σ_log²` where `σ_log = std / (median · ln 10)`
    /// is the delta-method log-space std. Requires every used point to carry a
    /// positive finite std. Default is unweighted: the bootstrap stds are
    /// reported alongside the fit but do not steer it.
    pub weighted: bool,
}

/// Result of a power-law fit `median ≈ 10^log_intercept · N^alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    /// Fitted scaling exponent (slope in log-log space).
    pub alpha: f64,
    /// log₁₀ of the prefactor (intercept in log-log space).
    pub log_intercept: f64,
    /// Residual-based standard error of the slope. Zero by convention for a
    /// two-point fit, where the line is exact and residuals carry no
    /// information.
    pub alpha_std: f64,
    /// Slope uncertainty propagated from the per-point stds (delta method);
    /// present only when every used point had a finite std.
    pub alpha_std_propagated: Option<f64>,
    /// Root-mean-square of the log₁₀ residuals over the used points.
    pub rmse_log: f64,
    /// Smallest and largest size actually used in the fit.
    pub n_range: (f64, f64),
    /// Number of points the regression ran on (≥ 2).
    pub point_count: usize,
    /// Number of in-range points excluded for having an infinite median.
    pub infinite_count: usize,
    /// True when more than 20% of the in-range points were infinite.
    pub unreliable: bool,
    /// True when the fit was weighted by per-point uncertainties.
    pub weighted: bool,
}

impl PowerLawFit {
    /// Fitted median at size `n`: `10^(log_intercept + alpha·log₁₀ n)`.
    pub fn predict(&self, n: f64) -> f64 {
        10f64.powf(self.log_intercept + self.alpha * n.log10())
    }
}

/// Fits a power law through `(N, median)` pairs by unweighted OLS in
/// log₁₀-log₁₀ space.
///
/// `range` restricts the fit to sizes in the inclusive interval `[min, max]`;
/// infinite medians inside the range are excluded and counted. Fails when
/// fewer than two usable points remain or when every usable point sits at the
/// same size.
pub fn fit_power_law(
    points: &[(f64, f64)],
    range: Option<(f64, f64)>,
) -> Result<PowerLawFit, AnalysisError> {
    let points: Vec<FitPoint> = points.iter().map(|&(n, m)| FitPoint::new(n, m)).collect();
    fit_power_law_with(
        &points,
        FitOptions {
            range,
            weighted: false,
        },
    )
}

/// Fits a power law with explicit options (range filter, weighting).
///
/// See [`fit_power_law`] for the unweighted convenience wrapper and the module
/// docs for what the two reported slope uncertainties mean.
pub fn fit_power_law_with(
    points: &[FitPoint],
    options: FitOptions,
) -> Result<PowerLawFit, AnalysisError> {
    if let Some((min, max)) = options.range {
        if min.is_nan() || max.is_nan() || min > max {
            return Err(AnalysisError::InvalidRange { min, max });
        }
    }

    // Partition the in-range points into usable (finite median) and infinite.
    let mut used: Vec<FitPoint> = Vec::new();
    let mut infinite_count = 0usize;
    for point in points {
        if !(point.n.is_finite() && point.n > 0.0) {
            return Err(AnalysisError::InvalidSize { n: point.n });
        }
        if point.median.is_nan() || point.median <= 0.0 {
            return Err(AnalysisError::InvalidMedian {
                n: point.n,
                median: point.median,
            });
        }
        if let Some((min, max)) = options.range {
            if point.n < min || point.n > max {
                continue;
            }
        }
        if point.median.is_infinite() {
            infinite_count += 1;
        } else {
            used.push(*point);
        }
    }

    let m = used.len();
    if m < 2 {
        return Err(AnalysisError::NotEnoughPoints { usable: m });
    }

    // Per-point weights. Unweighted fits use 1 everywhere; weighted fits use
    // 1/σ_log² with σ_log = std/(median·ln 10), the delta-method image of the
    // linear-space bootstrap std.
    let mut weights = vec![1.0f64; m];
    if options.weighted {
        for (w, point) in weights.iter_mut().zip(&used) {
            let std = point
                .std
                .ok_or(AnalysisError::MissingStd { n: point.n })?;
            let sigma_log = std / (point.median * std::f64::consts::LN_10);
            if !(sigma_log.is_finite() && sigma_log > 0.0) {
                return Err(AnalysisError::InvalidStd { n: point.n, std });
            }
            *w = 1.0 / (sigma_log * sigma_log);
        }
    }

    let xs: Vec<f64> = used.iter().map(|p| p.n.log10()).collect();
    let ys: Vec<f64> = used.iter().map(|p| p.median.log10()).collect();

    let w_sum: f64 = weights.iter().sum();
    let x_bar = xs.iter().zip(&weights).map(|(x, w)| w * x).sum::<f64>() / w_sum;
    let y_bar = ys.iter().zip(&weights).map(|(y, w)| w * y).sum::<f64>() / w_sum;

    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..m {
        let dx = xs[i] - x_bar;
        sxx += weights[i] * dx * dx;
        sxy += weights[i] * dx * (ys[i] - y_bar);
    }
    if sxx == 0.0 {
        return Err(AnalysisError::DegenerateAbscissa);
    }

    let alpha = sxy / sxx;
    let log_intercept = y_bar - alpha * x_bar;

    // Residual RMSE is always the plain (unweighted) log-space RMSE so that
    // weighted and unweighted fits of the same data are comparable.
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| {
            let r = y - (log_intercept + alpha * x);
            r * r
        })
        .sum();

    // Two points determine the line exactly; the residuals are pure rounding
    // noise and the residual-based slope error divides by m − 2. Both are
    // pinned to exactly zero by convention.
    let (alpha_std, rmse_log) = if m == 2 {
        (0.0, 0.0)
    } else {
        let rmse = (ssr / m as f64).sqrt();
        let std = if options.weighted {
            // Known-variance WLS slope error: the weights already encode the
            // per-point variances, so no residual scale estimate is involved.
            (1.0 / sxx).sqrt()
        } else {
            ((ssr / (m - 2) as f64) / sxx).sqrt()
        };
        (std, rmse)
    };

    // Delta-method propagation of the per-point stds through the slope
    // estimator α̂ = Σ cᵢ yᵢ with cᵢ = wᵢ(xᵢ − x̄)/Sxx: Var(α̂) = Σ cᵢ² σᵢ².
    // Available only when every used point carries a finite std.
    let alpha_std_propagated = if used.iter().all(|p| p.std.is_some_and(f64::is_finite)) {
        let var: f64 = used
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let sigma_log = p.std.unwrap() / (p.median * std::f64::consts::LN_10);
                let c = weights[i] * (xs[i] - x_bar) / sxx;
                c * c * sigma_log * sigma_log
            })
            .sum();
        Some(var.sqrt())
    } else {
        None
    };

    let n_min = used.iter().map(|p| p.n).fold(f64::INFINITY, f64::min);
    let n_max = used.iter().map(|p| p.n).fold(f64::NEG_INFINITY, f64::max);

    // Integer arithmetic for the >20% check avoids float-threshold edge cases:
    // infinite/(infinite+used) > 1/5 exactly when 5·infinite > infinite+used.
    let unreliable = 5 * infinite_count > infinite_count + m;

    Ok(PowerLawFit {
        alpha,
        log_intercept,
        alpha_std,
        alpha_std_propagated,
        rmse_log,
        n_range: (n_min, n_max),
        point_count: m,
        infinite_count,
        unreliable,
        weighted: options.weighted,
    })
}
