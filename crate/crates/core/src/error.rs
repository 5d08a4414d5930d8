use alloc::string::String;
use num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("q must satisfy 0 < q < 1, got {0}")]
    InvalidBase(f64),

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(&'static str),

    #[error("invalid parameter {name}: {invariant}")]
    InvalidParameter { name: &'static str, invariant: String },

    #[error("constraint violated: {invariant}")]
    ConstraintViolated { invariant: String },

    #[error("truncation needs more than {max_terms} terms")]
    MaxTermsExceeded { max_terms: usize },

    #[error("series diverges: |z| = {z_abs} >= 1 and the series does not terminate")]
    Divergent { z_abs: f64 },

    #[error("denominator parameter {index} hits the pole lattice at q^-{m}")]
    PoleInDenominator { index: usize, m: usize },

    #[error("pole guard tripped by factor {factor} = {value}")]
    PoleGuardTripped { factor: &'static str, value: Complex64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("endpoint singularity at x = {0}")]
    EndpointSingularity(f64),
}

impl Error {
    /// Stable short code used in CLI error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidBase(_) => "InvalidBase",
            Error::InvalidPolicy(_) => "InvalidPolicy",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::ConstraintViolated { .. } => "ConstraintViolated",
            Error::MaxTermsExceeded { .. } => "MaxTermsExceeded",
            Error::Divergent { .. } => "Divergent",
            Error::PoleInDenominator { .. } => "PoleInDenominator",
            Error::PoleGuardTripped { .. } => "PoleGuardTripped",
            Error::NonFinite(_) => "NonFinite",
            Error::EndpointSingularity(_) => "EndpointSingularity",
        }
    }

    pub(crate) fn constraint(invariant: impl Into<String>) -> Self {
        Error::ConstraintViolated { invariant: invariant.into() }
    }
}
