//! Crate-wide error type.
//!
//! Every mathematical precondition failure carries the name of the violated
//! contract, so CLI reports and test assertions can match on it directly.

use thiserror::Error;

/// Errors raised by the exact and floating-point computation paths.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A window-consuming operation would leave no valid rows/columns.
    #[error("WindowExhausted: {0}")]
    WindowExhausted(String),

    /// A moment sequence is too short for the requested truncation.
    #[error("InsufficientMoments: need {needed} moments, have {available}")]
    InsufficientMoments { needed: usize, available: usize },

    /// A triangular matrix has a zero diagonal entry and cannot be inverted.
    #[error("SingularDiagonal: zero diagonal entry at row {0}")]
    SingularDiagonal(usize),

    /// A symmetric matrix was required; entries (i,j) and (j,i) differ.
    #[error("NotSymmetric: entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },

    /// A matrix violates the lower-Hessenberg zero pattern.
    #[error("NotHessenberg: nonzero entry above the superdiagonal at ({i},{j})")]
    NotHessenberg { i: usize, j: usize },

    /// A Hessenberg matrix has a zero superdiagonal entry inside its window.
    #[error("DegenerateSuperdiagonal: zero superdiagonal entry at row {0}")]
    DegenerateSuperdiagonal(usize),

    /// A factorization pivot failed positivity; the payload is the 1-based
    /// index of the offending leading principal minor.
    #[error("NotPositiveDefinite: leading principal minor {0} is not positive")]
    NotPositiveDefinite(usize),

    /// A polynomial degree exceeds what the moment window supports.
    #[error("DegreeTooLarge: degree {degree} needs window > {degree}, have {window}")]
    DegreeTooLarge { degree: usize, window: usize },

    /// The matrix does not have the structure claimed for the requested index.
    #[error("IndexMismatch: {0}")]
    IndexMismatch(String),

    /// A moment sequence does not have the claimed finite order.
    #[error("OrderMismatch: {0}")]
    OrderMismatch(String),

    /// The minor-sign pattern rules out any representing measure; the payload
    /// is the 1-based index of the first offending minor.
    #[error("NotMomentMatrix: first violated minor {0}")]
    NotMomentMatrix(usize),

    /// A floating-point routine failed to converge or verify.
    #[error("NumericalFailure: {0}")]
    NumericalFailure(String),

    /// Malformed input data (file schema, rational syntax, shape mismatch).
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the error class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::WindowExhausted(_) => "WindowExhausted",
            Error::InsufficientMoments { .. } => "InsufficientMoments",
            Error::SingularDiagonal(_) => "SingularDiagonal",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::NotHessenberg { .. } => "NotHessenberg",
            Error::DegenerateSuperdiagonal(_) => "DegenerateSuperdiagonal",
            Error::NotPositiveDefinite(_) => "NotPositiveDefinite",
            Error::DegreeTooLarge { .. } => "DegreeTooLarge",
            Error::IndexMismatch(_) => "IndexMismatch",
            Error::OrderMismatch(_) => "OrderMismatch",
            Error::NotMomentMatrix(_) => "NotMomentMatrix",
            Error::NumericalFailure(_) => "NumericalFailure",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for errors caused by malformed input rather than mathematics.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidInput(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
