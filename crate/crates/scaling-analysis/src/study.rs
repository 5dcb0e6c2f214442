//! The α-vs-ε study: one power-law fit per tolerance over a shared size range,
//! plus plot-ready emission of fits and fitted curves.
//!
//! Loosening the tolerance makes more sizes solvable and the medians better
//! behaved, so the interesting diagnostic is how the exponent and its fit
//! error move as ε shrinks. [`alpha_vs_epsilon`] produces that table; the
//! writers below emit it for external plotting tools.

use std::io::Write;

use serde::Serialize;

use crate::error::AnalysisError;
use crate::fit::{fit_power_law_with, FitOptions, FitPoint, PowerLawFit};
use crate::table::MedianTable;

/// One row of the α-vs-ε table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonFit {
    /// Tolerance the medians were evaluated at.
    pub epsilon: f64,
    /// Power-law fit of median TTε versus N at this tolerance.
    pub fit: PowerLawFit,
}

/// Fits one power law per requested ε for `solver`, all over the same
/// inclusive size range.
///
/// The ε keys must match the table's values exactly (they are carried through
/// unchanged from measurement or import, so equal tolerances are bitwise
/// equal). A missing (solver, ε) series is an error; per-ε fit failures (for
/// example, too few solved sizes at a tight tolerance) propagate as-is.
///
/// The output order follows `epsilons`; each fit depends only on its own
/// series, so reordering the request reorders the rows and nothing else.
pub fn alpha_vs_epsilon(
    table: &MedianTable,
    solver: &str,
    epsilons: &[f64],
    range: Option<(f64, f64)>,
) -> Result<Vec<EpsilonFit>, AnalysisError> {
    let mut out = Vec::with_capacity(epsilons.len());
    for &epsilon in epsilons {
        let series = table.series(solver, epsilon);
        if series.is_empty() {
            return Err(AnalysisError::MissingSeries {
                solver: solver.to_string(),
                epsilon,
            });
        }
        let fit = fit_power_law_with(
            &series,
            FitOptions {
                range,
                weighted: false,
            },
        )?;
        out.push(EpsilonFit { epsilon, fit });
    }
    Ok(out)
}

/// Writes a plot-ready CSV for one fitted series: columns
/// `n,median,std,fitted`, one row per input point (infinite medians included,
/// with their fitted values). `std` is left empty for points without one.
pub fn write_fit_curve_csv<W: Write>(
    writer: W,
    series: &[FitPoint],
    fit: &PowerLawFit,
) -> Result<(), AnalysisError> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer
        .write_record(["n", "median", "std", "fitted"])
        .map_err(|e| AnalysisError::Table(e.into()))?;
    for point in series {
        let std = point.std.map(|s| s.to_string()).unwrap_or_default();
        csv_writer
            .write_record([
                point.n.to_string(),
                point.median.to_string(),
                std,
                fit.predict(point.n).to_string(),
            ])
            .map_err(|e| AnalysisError::Table(e.into()))?;
    }
    csv_writer.flush()?;
    Ok(())
}

/// Serializes an α-vs-ε table (or any fit list) as pretty JSON.
pub fn fits_json(fits: &[EpsilonFit]) -> serde_json::Value {
    serde_json::json!({
        "schema_version": 1,
        "fits": fits,
    })
}
