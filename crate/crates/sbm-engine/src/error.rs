use thiserror::Error;

use ising_core::ModelError;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(
        "coupling spread is zero (sigma = 0), so c0 cannot be derived; \
         supply an explicit c0"
    )]
    DegenerateCouplings,
    #[error(
        "model has {n} spin(s); deriving c0 needs n >= 2 or an explicit c0"
    )]
    TooSmallForSigma { n: usize },
    #[error(
        "non-finite dynamics at step {step}; check the c0 / dt / field scales"
    )]
    NonFiniteStep { step: u32 },
    #[error("replica {replica}: {source}")]
    Replica {
        replica: u32,
        #[source]
        source: Box<EngineError>,
    },
    #[error("trace output: {0}")]
    Trace(#[from] std::io::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
}
