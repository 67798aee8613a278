use alloc::string::String;

/// Errors raised by the algebraic pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    /// Jacobi identity fails; carries the worst basis triple.
    #[error("Jacobi identity violated: residual {residual:e} at basis triple ({i}, {j}, {k})")]
    InvalidAlgebra {
        residual: f64,
        i: usize,
        j: usize,
        k: usize,
    },

    /// The negative Killing form is not positive definite.
    #[error("algebra is not compact semisimple: Killing pivot {pivot:e} at index {index} (threshold {threshold:e})")]
    NotSemisimple {
        index: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("bracket closure did not stabilise after {iterations} rounds (dim {dim})")]
    NoConvergence { iterations: usize, dim: usize },

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
