//! Error types for table import and power-law fitting.

use thiserror::Error;

/// Errors raised while importing or exporting median tables.
#[derive(Debug, Error)]
pub enum TableError {
    /// The CSV header did not match the expected `solver,n,epsilon,median,std` schema.
    #[error("unexpected CSV header: expected `solver,n,epsilon,median,std`, found `{found}`")]
    Header { found: String },

    /// A data row failed validation. `row` is 1-based and counts the header,
    /// so the first data row is row 2.
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

/// Errors raised by the fitting routines.
#[derive(Debug, Error)]
pub enum AnalysisError {
    /// Fewer than two usable (finite, in-range) points remained.
    #[error("power-law fit needs at least 2 usable points, found {usable}")]
    NotEnoughPoints { usable: usize },

    /// The range filter is inverted or NaN.
    #[error("invalid size range [{min}, {max}]")]
    InvalidRange { min: f64, max: f64 },

    /// A point carried a size that is not a positive finite number.
    #[error("invalid instance size {n}")]
    InvalidSize { n: f64 },

    /// A point carried a median that is NaN, zero, or negative. Only positive
    /// finite medians and +inf (unsolved) are meaningful.
    #[error("invalid median {median} at N = {n}")]
    InvalidMedian { n: f64, median: f64 },

    /// A weighted fit was requested but a used point has no std.
    #[error("weighted fit requested but point at N = {n} has no std")]
    MissingStd { n: f64 },

    /// A weighted fit was requested but a used point has a std that yields no
    /// finite weight (zero, negative, NaN, or infinite).
    #[error("weighted fit requested but point at N = {n} has unusable std {std}")]
    InvalidStd { n: f64, std: f64 },

    /// All usable points share one abscissa, so the slope is undefined.
    #[error("all usable points have the same size; slope is undefined")]
    DegenerateAbscissa,

    /// The median table has no series for the requested (solver, ε) key.
    #[error("median table has no series for solver `{solver}` at epsilon {epsilon}")]
    MissingSeries { solver: String, epsilon: f64 },

    #[error(transparent)]
    Table(#[from] TableError),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}
