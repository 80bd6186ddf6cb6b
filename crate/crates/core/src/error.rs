use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid spin quantum number `{0}`: expected a non-negative half-integer")]
    InvalidSpin(String),

    #[error("m = {m} is outside the range -{j}..={j}")]
    MOutOfRange { m: String, j: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max element deviation {0:e})")]
    NotHermitian(f64),

    #[error("density operator must have unit trace (found {0})")]
    BadTrace(f64),

    #[error("operator is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("direction is not a unit vector (|u| = {0})")]
    NonUnitDirection(f64),

    #[error("angle out of range: {0}")]
    AngleOutOfRange(String),

    #[error("negative {what} beyond round-off: {value:e}")]
    NegativeBeyondRoundoff { what: &'static str, value: f64 },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("mean spin vanishes, transverse directions are undefined")]
    UndefinedMeanSpin,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
