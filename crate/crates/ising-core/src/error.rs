use thiserror::Error;

/// Validation and evaluation errors for Ising/QUBO problems.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model must have at least one spin")]
    EmptyModel,
    #[error("field vector length {got} does not match spin count {expected}")]
    FieldLength { expected: usize, got: usize },
    #[error("self-coupling at index {index} (diagonal terms belong in fields)")]
    SelfCoupling { index: usize },
    #[error("coupling index ({i}, {j}) out of range for {n} spins")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("duplicate coupling for pair ({i}, {j})")]
    DuplicateCoupling { i: usize, j: usize },
    #[error("non-finite coupling value at pair ({i}, {j})")]
    NonFiniteCoupling { i: usize, j: usize },
    #[error("non-finite field value")]
    NonFiniteField,
    #[error("spin configuration has {got} entries, model has {expected} spins")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("spin value {value} at index {index} is not +1 or -1")]
    InvalidSpin { index: usize, value: i8 },
    #[error("exhaustive search refused: {n} spins exceeds the cap of {cap}")]
    TooManySpins { n: usize, cap: usize },
    #[error("duplicate edge ({i}, {j}) in generator input")]
    DuplicateEdge { i: usize, j: usize },
    #[error("self-loop at vertex {index} in generator input")]
    SelfLoop { index: usize },
    #[error("QUBO index ({i}, {j}) out of range for {n} variables")]
    QuboIndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("duplicate QUBO entry for pair ({i}, {j})")]
    DuplicateQuboEntry { i: usize, j: usize },
}
