use thiserror::Error;

use sbm_engine::EngineError;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("empty run set")]
    EmptyRuns,
    #[error("empty value set")]
    EmptyValues,
    #[error("empty instance set")]
    EmptyInstances,
    #[error("grid has an empty axis")]
    EmptyGrid,
    #[error(
        "instance `{id}` has no reference energy; certify it with the \
         exhaustive oracle or set the E0 metadata, or use the best-found \
         reference policy"
    )]
    MissingGroundEnergy { id: String },
    #[error("reference energy must be finite, got {value}")]
    NonFiniteReference { value: f64 },
    #[error("optimality gap must be finite and non-negative, got {epsilon}")]
    InvalidEpsilon { epsilon: f64 },
    #[error("success probability must lie in [0, 1], got {p}")]
    InvalidProbability { p: f64 },
    #[error("runtime must be positive, got {t_f}")]
    NonPositiveRuntime { t_f: f64 },
    #[error("values contain NaN")]
    NanValue,
    #[error("bootstrap needs at least one resample")]
    NoResamples,
    #[error("n_runs must be at least 1")]
    NoRuns,
    #[error("instances must share one size, found n = {first} and n = {other}")]
    MixedSizes { first: usize, other: usize },
    #[error("instance count mismatch: measured {measured}, supplied {supplied}")]
    InstanceMismatch { measured: usize, supplied: usize },
    #[error("engine: {0}")]
    Engine(#[from] EngineError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
