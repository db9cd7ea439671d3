//! Crate-wide error type.

/// Errors produced by the collocation toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature did not reach its accuracy target.
    /// Carries the best value obtained so far.
    #[error("accuracy target missed in {context} (partial value {partial:e})")]
    Accuracy { context: String, partial: f64 },

    /// Matrix assembly failed; names the offending entry.
    #[error("assembly failed at entry ({row}, {col}): {source}")]
    Assembly {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },

    /// A dense factorization or eigen-iteration failed.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Linear system is singular to working precision.
    #[error("singular system (condition estimate {cond:e})")]
    Singular { cond: f64 },

    /// An iteration exhausted its budget.
    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    /// Eigen-solve produced imaginary parts above the acceptance threshold.
    #[error("spurious spectrum: max imaginary part {max_imag:e} exceeds {limit:e}")]
    SpuriousSpectrum { max_imag: f64, limit: f64 },

    /// Caller misuse: bad sizes, mixed bases, unknown names.
    #[error("usage error: {0}")]
    Usage(String),

    /// Samples or file contents are unusable (non-finite, malformed).
    #[error("invalid data: {0}")]
    Data(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn at_entry(self, row: usize, col: usize) -> Error {
        Error::Assembly {
            row,
            col,
            source: Box::new(self),
        }
    }
}
