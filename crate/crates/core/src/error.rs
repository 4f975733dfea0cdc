use thiserror::Error;

/// Errors raised by the exact and numeric layers.
///
/// Verification failures are not errors; they are reported through
/// [`crate::report::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum UmbraError {
    #[error("degree cap mismatch: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },

    #[error("operator is not nilpotent on the truncated space (cap {cap})")]
    NotNilpotent { cap: usize },

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    #[error("not binomial type: {0}")]
    NotBinomialType(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("working degree cap {have} too small, need N_work >= {need}")]
    CapShortfall { have: usize, need: usize },

    #[error("index count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error(
        "quadrature did not converge: estimated error {achieved:e} after {intervals} intervals"
    )]
    NonConvergence { achieved: f64, intervals: usize },

    #[error("tail bound unachievable: {0}")]
    TailBound(String),
}

pub type Result<T, E = UmbraError> = std::result::Result<T, E>;
