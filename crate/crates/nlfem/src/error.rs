use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A kernel was evaluated at coincident points.
    #[error("kernel singularity: x = y = {0}")]
    Singularity(f64),

    /// Adaptive quadrature exhausted its subdivision budget. Carries the
    /// partial value and the remaining error estimate.
    #[error("quadrature did not converge after {subdivisions} subdivisions (partial value {value:e}, error estimate {err_estimate:e})")]
    QuadratureConvergence {
        value: f64,
        err_estimate: f64,
        subdivisions: usize,
    },

    /// Quadrature failure while assembling a specific stiffness entry.
    #[error("assembly failed at entry ({i}, {j})")]
    Assembly {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },

    /// Cholesky factorization hit a non-positive pivot.
    #[error("matrix is not positive definite: leading minor of order {minor} is not positive")]
    NotPositiveDefinite { minor: usize },

    /// The solve produced a residual above the contract tolerance.
    #[error("solver residual {residual:e} exceeds {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },

    /// Two objects that must share a mesh do not.
    #[error("mesh mismatch: {0}")]
    MeshMismatch(String),

    /// A nodal or dof index is out of range.
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// A quadratic form that must be nonnegative came out negative.
    #[error("internal consistency: quadratic form is negative ({0:e})")]
    NegativeQuadraticForm(f64),

    /// Rate computation on a degenerate error sequence.
    #[error("undefined rate: {0}")]
    UndefinedRate(String),

    #[error("unknown figure id {0} (expected 1..=5)")]
    UnknownFigure(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
