use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised anywhere in the toolkit.
///
/// Variants are grouped by [`ErrorCategory`], which the command-line driver
/// maps onto process exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    /// The requested state does not fit the sampling grid, or has no energy.
    #[error("synthesis error: {0}")]
    Synthesis(String),

    /// A coordinate or shift lies outside what the grid can represent.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shaping error: {0}")]
    Shaping(String),

    #[error("insufficient interference structure: {0}")]
    InsufficientStructure(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("calibration error: {0}")]
    Calibration(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Config,
    Data,
    Compute,
    Io,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Config(_) | Error::Synthesis(_) | Error::Domain(_) => ErrorCategory::Config,
            Error::Data(_) | Error::Parse { .. } | Error::Calibration(_) | Error::Format(_) => ErrorCategory::Data,
            Error::Shaping(_) | Error::InsufficientStructure(_) | Error::Numerical(_) => ErrorCategory::Compute,
            Error::Io(_) => ErrorCategory::Io,
        }
    }

    /// Short stable label, used in status columns and JSON reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Synthesis(_) => "synthesis",
            Error::Domain(_) => "domain",
            Error::Shaping(_) => "shaping",
            Error::InsufficientStructure(_) => "insufficient-structure",
            Error::Numerical(_) => "numerical",
            Error::Data(_) => "data",
            Error::Parse { .. } => "parse",
            Error::Calibration(_) => "calibration",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        if err.is_io() {
            Error::Io(err.into())
        } else {
            Error::Format(err.to_string())
        }
    }
}
