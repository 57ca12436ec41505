//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable tables do not match")]
    TableMismatch,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("classes live on different curves")]
    CurveMismatch,

    #[error("invalid orbifold order {0}; orders must be >= 1")]
    InvalidOrder(u32),

    #[error("linear system is inconsistent")]
    InconsistentSystem,

    #[error("reconstruction ansatz underdetermined: kernel dimension {kernel_dim}")]
    Underdetermined { kernel_dim: usize },

    #[error("equations stay nonlinear after substituting all solved unknowns")]
    NonlinearSystem,

    #[error("tear-drop order {0} outside supported range 2..={1}")]
    OrderOutOfRange(u32, u32),

    #[error("structure check failed: {0}")]
    StructureCheck(String),

    #[error("{0} is not Fano; no small-quantum presentation exists (see nilpotency certificate)")]
    NotFano(String),

    #[error("nilpotency certificate requested for Fano curve {0}")]
    FanoCurve(String),

    #[error("ideal is not zero-dimensional (no pure power of `{0}` in the leading term ideal)")]
    PositiveDimensional(String),

    #[error("quotient dimension {got} does not match expected basis count {expected}")]
    DimensionCheck { got: usize, expected: usize },

    #[error("degree {0} exceeds the enumeration budget {1}")]
    DegreeBudget(u32, u32),

    #[error("singular metric")]
    SingularMetric,

    #[error("truncation order must be {expected}, got {got}")]
    TruncationOrder { expected: usize, got: usize },

    #[error("{0}")]
    Invalid(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
