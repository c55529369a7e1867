use thiserror::Error;

/// Errors produced by the linear-algebra kernels, state constructors,
/// simulators and the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian within tolerance {tol} (max deviation {deviation})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix has a significantly negative eigenvalue {eigenvalue} (clip tolerance {tol})")]
    NegativeEigenvalue { eigenvalue: f64, tol: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm})")]
    NonConvergence { sweeps: usize, off_norm: f64 },

    #[error("not a valid density operator: {0}")]
    InvalidDensity(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("expectation value has non-negligible imaginary part {0}")]
    ComplexExpectation(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
