use thiserror::Error;

/// Errors raised by the discrimination toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^dag| = {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("trace is not 1 (got {0})")]
    BadTrace(f64),

    #[error("matrix is not unitary (residual {0:e})")]
    NotUnitary(f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("dimension {0} too small; need at least 2")]
    DimTooSmall(usize),

    #[error("invalid dimension: {0}")]
    BadDimension(String),

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("invalid ensemble weights: {0}")]
    BadWeights(String),

    #[error("invalid priors: p_const = {0}, p_bal = {1}")]
    BadPriors(f64, f64),

    #[error("rho and its dephased image do not commute (residual {0:e})")]
    NotCommuting(f64),

    #[error("state has no nonzero eigenvalue")]
    ZeroState,

    #[error("state does not have uniform-magnitude amplitudes")]
    NotPerfectState,

    #[error("oracle is neither constant nor balanced")]
    PromiseViolation,

    #[error("invalid oracle: {0}")]
    InvalidOracle(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid pipeline: {0}")]
    InvalidPipeline(String),
}

pub type Result<T> = std::result::Result<T, Error>;
