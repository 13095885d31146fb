use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. Each variant maps to a stable
/// machine-readable code and to one of the CLI exit statuses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("linear forms belong to different bases")]
    BasisMismatch,

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("precision cap of {cap} bits exceeded while {context}")]
    PrecisionCapExceeded { cap: u32, context: String },

    #[error("search cap of {cap} exceeded in {context}")]
    SearchCapExceeded { cap: u64, context: String },

    #[error("depth exhausted: {0}")]
    DepthExhausted(String),

    #[error("no witness interval: {0}")]
    EmptyWitness(String),

    #[error("empty gap: max f(L) is not below min f(R)")]
    EmptyGap,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("duplicate tuple {0}")]
    DuplicateTuple(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("property violated: {0}")]
    PropertyViolation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::BasisMismatch => "basis_mismatch",
            Error::InvalidBasis(_) => "invalid_basis",
            Error::PrecisionCapExceeded { .. } => "precision_cap_exceeded",
            Error::SearchCapExceeded { .. } => "search_cap_exceeded",
            Error::DepthExhausted(_) => "depth_exhausted",
            Error::EmptyWitness(_) => "empty_witness",
            Error::EmptyGap => "empty_gap",
            Error::InvalidInput(_) => "invalid_input",
            Error::InvalidChain(_) => "invalid_chain",
            Error::DuplicateTuple(_) => "duplicate_tuple",
            Error::Parse(_) => "parse_error",
            Error::PropertyViolation(_) => "property_violation",
            Error::Io(_) => "io_error",
        }
    }

    /// Exit status used by the command-line tool: 1 property failure,
    /// 2 usage/parse error, 3 cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionCapExceeded { .. }
            | Error::SearchCapExceeded { .. }
            | Error::DepthExhausted(_) => 3,
            Error::BasisMismatch
            | Error::InvalidBasis(_)
            | Error::InvalidInput(_)
            | Error::DuplicateTuple(_)
            | Error::Parse(_)
            | Error::Io(_) => 2,
            Error::EmptyWitness(_)
            | Error::EmptyGap
            | Error::InvalidChain(_)
            | Error::PropertyViolation(_) => 1,
        }
    }

    pub fn is_cap(&self) -> bool {
        self.exit_code() == 3
    }

    pub(crate) fn search_cap(cap: u64, context: impl Into<String>) -> Self {
        Error::SearchCapExceeded {
            cap,
            context: context.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
