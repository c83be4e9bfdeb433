use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("empty spectrum")]
    EmptySpectrum,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not Hermitian (max |A - A*| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("point {re} + {im}i is not in the open upper half-plane")]
    NotUpperHalfPlane { re: f64, im: f64 },
    #[error("non-finite Stieltjes sample at E = {energy}, delta = {delta}")]
    NonFiniteSample { energy: f64, delta: f64 },
    #[error("delta ladder must be strictly decreasing and positive")]
    InvalidDeltaLadder,
    #[error("measures are not probability measures (total masses {0}, {1})")]
    NotProbability(f64, f64),
    #[error("empirical measures have different sizes ({0} vs {1})")]
    UnequalSizes(usize, usize),
    #[error("matrix size n must be at least 1")]
    ZeroSize,
    #[error("non-real DFT of symmetric b (imaginary residue {0:e})")]
    NonRealDft(f64),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dense eigensolve of dimension {dim} exceeds the configured cap {cap}")]
    DenseCapExceeded { dim: usize, cap: usize },
    #[error("hypothesis violated: sum u u* differs from sum v v* by {0:e}")]
    HypothesisViolated(f64),
    #[error("index j = {j} out of range 0..={n}")]
    IndexOutOfRange { j: usize, n: usize },
    #[error("test vector must be nonzero")]
    ZeroVector,
    #[error("bandwidth must be positive, got {0}")]
    InvalidBandwidth(f64),
    #[error("linear solve failed: {0}")]
    SolveFailed(String),
    #[error("quadrature did not converge (last error estimate {estimate:e}, iterate gap {gap:e})")]
    QuadratureNotConverged { estimate: f64, gap: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, SpectraError>;
