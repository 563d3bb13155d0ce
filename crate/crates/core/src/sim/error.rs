use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("subsystem dimension {dim} at position {subsystem} is below 2")]
    InvalidDimension { subsystem: usize, dim: usize },
    #[error("a composite system needs at least one subsystem")]
    EmptyShape,
    #[error("level {level} out of range for subsystem {subsystem} of dimension {dim}")]
    LevelOutOfRange { subsystem: usize, level: usize, dim: usize },
    #[error("expected {expected} levels, got {got}")]
    LevelCount { expected: usize, got: usize },
    #[error("amplitude array has length {got}, shape requires {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("non-finite amplitude at index {index}")]
    NonFinite { index: usize },
    #[error("matrix with {entries} entries is not square over local dimension {dim}")]
    NotSquare { entries: usize, dim: usize },
    #[error("target subsystem {target} does not exist (system has {count})")]
    TargetOutOfRange { target: usize, count: usize },
    #[error("target subsystem {0} listed twice")]
    DuplicateTarget(usize),
    #[error("operator acts on {expected} subsystems, {got} targets given")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operator expects dimension {expected} on target {target}, subsystem has {got}")]
    DimensionMismatch { target: usize, expected: usize, got: usize },
    #[error("states have different shapes")]
    ShapeMismatch,
    #[error("cannot measure a degenerate state (norm^2 = {norm_sqr})")]
    DegenerateState { norm_sqr: f64 },
}
