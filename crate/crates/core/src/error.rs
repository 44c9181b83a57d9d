use thiserror::Error;

/// Errors raised by the computational routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("root finder did not converge after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a configuration with real vertices")]
    ModeError,
    #[error("conjugate data of vertex {0} is not the complex conjugate")]
    NotConjugate(usize),
    #[error("invalid vertex configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("query point lies on the boundary curve")]
    OnBoundary,
    #[error("adjoint numerator tail coefficient at degree {degree} does not vanish")]
    DegreeOverflow { degree: usize },
    #[error("internal consistency check failed: {0}")]
    ConsistencyFailure(String),
    #[error("recurrence violated at k = {k}")]
    RecurrenceViolation { k: i64 },
    #[error("need moments up to index {needed}, have {have}")]
    InsufficientMoments { needed: usize, have: usize },
    #[error("Toeplitz moment matrix is singular")]
    SingularMomentMatrix,
    #[error("no cyclic ordering reproduces the moments (best mismatch {best:e})")]
    NoMatchingOrder { best: f64 },
    #[error("invalid cycle notation: {0}")]
    InvalidCycle(String),
    #[error("configuration is not generic: two orbit values coincide")]
    NonGenericConfig,
    #[error("expected degree {expected}, found {found:?}")]
    DegreeMismatch { expected: usize, found: Option<usize> },
    #[error("root sets differ (max distance {distance:e})")]
    RootMismatch { distance: f64 },
    #[error("triangle is degenerate: two vertices coincide")]
    DegenerateTriangle,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
