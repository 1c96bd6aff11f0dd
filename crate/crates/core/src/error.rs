//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by matrix construction, numerical kernels, law checks and
/// suite orchestration.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported dimension {dim} (supported range is 1..=16)")]
    BadDimension { dim: usize },

    #[error("matrix entries must be finite")]
    NotFinite,

    #[error("matrix is not Hermitian (defect {defect:.3e} exceeds tolerance {tol:.3e})")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("matrix is not positive definite (min eigenvalue {min_eig:.3e}, max {max_eig:.3e})")]
    NotPositive { min_eig: f64, max_eig: f64 },

    #[error("matrix is singular or too ill-conditioned (smin {smin:.3e}, smax {smax:.3e})")]
    IllConditioned { smin: f64, smax: f64 },

    #[error("elimination hit a negligible pivot (magnitude {pivot:.3e}); matrix is singular")]
    SingularMatrix { pivot: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("spectrum [{lo:.6e}, {hi:.6e}] is not enclosed by the contour with 5% margin")]
    SpectrumNotEnclosed { lo: f64, hi: f64 },

    #[error("contour node at z = {re:.6e}+{im:.6e}i makes the resolvent singular")]
    ResolventSingular { re: f64, im: f64 },

    #[error("contour is invalid: {reason}")]
    BadContour { reason: &'static str },

    #[error("scalar mean inputs must be positive (got {value:.6e})")]
    NonPositiveInput { value: f64 },

    #[error("weight {nu} outside the open interval (0, 1)")]
    WeightOutOfRange { nu: f64 },

    #[error("invalid interval: k = {k:.6e}, K = {kk:.6e} must satisfy 0 < k <= K")]
    BadInterval { k: f64, kk: f64 },

    #[error("parameter outside its domain: {reason}")]
    ParameterOutOfDomain { reason: &'static str },

    #[error("point {value:.6e} outside the domain of the selected convex function")]
    DomainViolation { value: f64 },

    #[error("reference weights must be strictly positive (q[{index}] = {value:.6e})")]
    ZeroDenominatorWeight { index: usize, value: f64 },

    #[error("law variant precondition violated: {reason}")]
    VariantPreconditionViolated { reason: &'static str },

    #[error("unknown law id: {id}")]
    UnknownLawId { id: String },

    #[error("law instance is incomplete or inconsistent: {reason}")]
    InvalidInstance { reason: String },

    #[error("invalid configuration: {reason}")]
    BadConfig { reason: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
