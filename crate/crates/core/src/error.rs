//! Error type shared by all modules.

use crate::model::{Basis, ValidationReport};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("expected a state in the {expected:?} basis, got {found:?}")]
    BasisMismatch { expected: Basis, found: Basis },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("unphysical input: {0}")]
    UnphysicalInput(String),

    #[error("state invariant violated at tγ = {t_gamma}: {report}")]
    StateInvariant {
        t_gamma: f64,
        report: ValidationReport,
    },

    #[error("integrator step size underflow at tγ = {t_gamma}")]
    StepUnderflow { t_gamma: f64 },

    #[error("steady-state system is rank deficient beyond the trace constraint (degenerate steady manifold)")]
    DegenerateSteadyState,

    #[error("query r/λ₀ = {query} outside table range [{min}, {max}]")]
    OutOfRange { query: f64, min: f64, max: f64 },

    #[error("table format error at line {line}: {message}")]
    TableFormat { line: usize, message: String },

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("concurrence input has invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
