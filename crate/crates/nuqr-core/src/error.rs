use core::fmt;

/// Errors reported by state constructors, channel builders, and measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A scalar parameter lies outside its physical domain.
    OutOfRange {
        name: &'static str,
        value: f64,
    },
    /// A scalar parameter is NaN or infinite.
    NonFinite {
        name: &'static str,
    },
    /// Matrix is not Hermitian within tolerance.
    NotHermitian {
        residual: f64,
    },
    /// Density matrix trace differs from one.
    TraceNotOne {
        trace: f64,
    },
    /// Density matrix has an eigenvalue below the PSD tolerance.
    NotPositiveSemidefinite {
        min_eigenvalue: f64,
    },
    /// State support extends outside the diagonal plus the central coherence,
    /// so the closed-form measures do not apply. Indices are zero-based.
    UnsupportedStructure {
        row: usize,
        col: usize,
    },
    /// Kraus operators do not satisfy the completeness condition.
    IncompleteKrausSet {
        residual: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::OutOfRange { name, value } => {
                write!(f, "parameter `{name}` out of range: {value}")
            }
            Error::NonFinite { name } => write!(f, "parameter `{name}` is not finite"),
            Error::NotHermitian { residual } => {
                write!(f, "matrix is not Hermitian (residual {residual:.3e})")
            }
            Error::TraceNotOne { trace } => {
                write!(f, "density matrix trace is {trace}, expected 1")
            }
            Error::NotPositiveSemidefinite { min_eigenvalue } => {
                write!(
                    f,
                    "density matrix has negative eigenvalue {min_eigenvalue:.3e}"
                )
            }
            Error::UnsupportedStructure { row, col } => {
                write!(
                    f,
                    "unexpected nonzero entry at ({row}, {col}); state is not X-structured"
                )
            }
            Error::IncompleteKrausSet { residual } => {
                write!(
                    f,
                    "Kraus operators do not sum to the identity (residual {residual:.3e})"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
