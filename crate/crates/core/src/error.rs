use thiserror::Error;

/// Errors raised by the dimer library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameter: {0}")]
    InvalidParams(String),

    #[error("invalid field values: {0}")]
    InvalidFields(String),

    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NonHermitianInput(f64),

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NotConverged(usize),

    #[error("finite-difference step {0:e} is below the 1e-9 floor")]
    StepUnderflow(f64),

    #[error("single-ion anisotropy makes J - 2D vanish; the critical ratio tends to 0")]
    SingularAnisotropy,

    #[error("target entropy {0} lies outside (0, ln 6)")]
    TargetOutOfRange(f64),

    #[error("caloric curve never attains the requested sign")]
    NoExtremumOfRequestedSign,

    #[error("caloric curve needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("invalid range: {0}")]
    InvalidRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
