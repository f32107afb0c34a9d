//! Error type shared by every module.

use thiserror::Error;

/// Library-wide error enum. The CLI maps [`Error::kind`] onto process exit
/// codes (usage errors exit 2, numerical failures exit 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-invertible quaternion")]
    NonInvertibleQuaternion,

    #[error("not in quaternionic image: structure residual {residual:.3e} exceeds {tol:.3e}")]
    NotQuaternionicImage { residual: f64, tol: f64 },

    /// A checker or operation was invoked outside its stated hypotheses.
    /// The message names the violated hypothesis.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("eigenvalue {value} escapes the function domain {domain}")]
    DomainEscape { value: f64, domain: String },

    #[error("outside guaranteed convergence region: |q| = {q_abs} <= ||T|| = {op_norm}")]
    OutsideConvergenceRegion { q_abs: f64, op_norm: f64 },

    #[error("invalid function spec `{0}` (expected `<id>[:r=<float>]`)")]
    FunctionSpec(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Internal numerical failure (eigensolver non-convergence, series
    /// budget exhaustion).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse error class, used for exit-code mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Caller violated a precondition, hypothesis, or input format.
    Usage,
    /// The computation itself failed numerically.
    Numerical,
    /// Underlying I/O failure.
    Io,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Numerical(_) => ErrorKind::Numerical,
            Error::Io(_) => ErrorKind::Io,
            _ => ErrorKind::Usage,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
