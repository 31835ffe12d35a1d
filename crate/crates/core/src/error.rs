use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by frontends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Bad parameters supplied by the caller.
    Usage,
    /// Unreadable or malformed input, invalid vertices, disconnected graphs.
    Input,
    /// Eigensolver, landscape, or descent failures.
    Solver,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop at vertex {vertex}{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    SelfLoop { vertex: usize, line: Option<usize> },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("unknown vertex label {0}")]
    UnknownLabel(u64),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no connected sample after {attempts} attempts")]
    NoConnectedSample { attempts: usize },

    #[error("cannot take the Rayleigh quotient of a zero vector")]
    ZeroVector,

    #[error(
        "inverse iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NotConverged { iterations: usize, residual: f64 },

    #[error("conjugate gradient breakdown: matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("landscape not strictly positive at vertex {vertex} (value {value:e})")]
    Positivity { vertex: usize, value: f64 },

    #[error("descent certificate violated at vertex {vertex} (margin {margin:e})")]
    Certificate { vertex: usize, margin: f64 },

    #[error("greedy descent stuck at vertex {vertex} after {steps} steps")]
    DescentStuck { vertex: usize, steps: usize },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::InvalidParameter(_) => ErrorCategory::Usage,
            Error::Parse { .. }
            | Error::SelfLoop { .. }
            | Error::VertexOutOfRange { .. }
            | Error::UnknownLabel(_)
            | Error::Disconnected { .. }
            | Error::NoConnectedSample { .. }
            | Error::Io(_) => ErrorCategory::Input,
            Error::ZeroVector
            | Error::NotConverged { .. }
            | Error::NotPositiveDefinite
            | Error::Positivity { .. }
            | Error::Certificate { .. }
            | Error::DescentStuck { .. }
            | Error::InvalidPath(_) => ErrorCategory::Solver,
        }
    }

    /// Short stable tag for machine-parsable diagnostics.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::SelfLoop { .. } => "self-loop",
            Error::VertexOutOfRange { .. } | Error::UnknownLabel(_) => "bad-vertex",
            Error::Disconnected { .. } => "disconnected",
            Error::InvalidParameter(_) => "usage",
            Error::NoConnectedSample { .. } => "no-connected-sample",
            Error::ZeroVector => "zero-vector",
            Error::NotConverged { .. } => "not-converged",
            Error::NotPositiveDefinite => "not-positive-definite",
            Error::Positivity { .. } => "positivity",
            Error::Certificate { .. } => "certificate",
            Error::DescentStuck { .. } => "descent-stuck",
            Error::InvalidPath(_) => "invalid-path",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
