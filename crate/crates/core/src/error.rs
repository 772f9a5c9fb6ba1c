use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("function undefined at eigenvalue {eigenvalue}")]
    DomainError { eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("eigenvalue {eigenvalue:e} is below the clamp threshold")]
    NegativeEigenvalue { eigenvalue: f64 },

    #[error("matrix is not centrosymmetric (violation {residual:e} at ({row}, {col}))")]
    NotCentrosymmetric { residual: f64, row: usize, col: usize },

    #[error("matrix is not in X form (|m[{row}][{col}]| = {residual:e})")]
    NotXForm { residual: f64, row: usize, col: usize },

    #[error("matrix is not unitary (max |u u^dagger - I| = {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("analytic formula not applicable: {0}")]
    AnalyticNotApplicable(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DomainError { .. } => "DomainError",
            Error::TraceNotOne { .. } => "TraceNotOne",
            Error::NotPsd { .. } => "NotPSD",
            Error::NegativeEigenvalue { .. } => "NegativeEigenvalue",
            Error::NotCentrosymmetric { .. } => "NotCentrosymmetric",
            Error::NotXForm { .. } => "NotXForm",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::AnalyticNotApplicable(_) => "AnalyticNotApplicable",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
