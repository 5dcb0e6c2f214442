//! Scaling analysis for time-to-epsilon benchmarks.
//!
//! Takes median tables — produced by the benchmark harness or imported from
//! externally digitized curves — and fits power laws `median ∝ N^α` in
//! log₁₀-log₁₀ space, reporting the exponent, two flavors of slope
//! uncertainty, and a log-space RMSE as the fit-quality metric. The α-vs-ε
//! study repeats the fit across tolerances to expose how scaling degrades as
//! the target tightens.

pub mod error;
pub mod fit;
pub mod study;
pub mod table;

pub use error::{AnalysisError, TableError};
pub use fit::{fit_power_law, fit_power_law_with, FitOptions, FitPoint, PowerLawFit};
pub use study::{alpha_vs_epsilon, fits_json, write_fit_curve_csv, EpsilonFit};
pub use table::{
    export_medians, import_external_medians, read_medians, write_medians, MedianRow, MedianTable,
};
