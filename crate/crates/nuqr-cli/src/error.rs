use std::fmt;
use std::process::ExitCode;

/// Errors surfaced by the registry, sweep engine, and emitters.
///
/// The process exit code distinguishes configuration problems (2) from
/// out-of-range physics parameters (3).
#[derive(Debug)]
pub enum Error {
    /// Malformed registry file; `line` is 1-based.
    Config { line: usize, message: String },
    /// Inconsistent or incomplete sweep request.
    Usage(String),
    /// A parameter failed the core library's domain validation.
    Domain(nuqr_core::Error),
    /// A table with no rows cannot be emitted.
    EmptyResult,
    Io(std::io::Error),
}

impl Error {
    pub fn usage(message: impl Into<String>) -> Self {
        Error::Usage(message.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Error::Config { .. } | Error::Usage(_) | Error::EmptyResult => ExitCode::from(2),
            Error::Domain(_) => ExitCode::from(3),
            Error::Io(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config { line, message } => write!(f, "config error (line {line}): {message}"),
            Error::Usage(message) => write!(f, "{message}"),
            Error::Domain(inner) => write!(f, "domain error: {inner}"),
            Error::EmptyResult => write!(f, "sweep produced no rows"),
            Error::Io(inner) => write!(f, "io error: {inner}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Domain(inner) => Some(inner),
            Error::Io(inner) => Some(inner),
            _ => None,
        }
    }
}

impl From<nuqr_core::Error> for Error {
    fn from(inner: nuqr_core::Error) -> Self {
        Error::Domain(inner)
    }
}

impl From<std::io::Error> for Error {
    fn from(inner: std::io::Error) -> Self {
        Error::Io(inner)
    }
}
