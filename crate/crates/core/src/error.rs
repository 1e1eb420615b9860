use thiserror::Error;

/// Every failure the library can report.
///
/// Variants split into two families: bad input (exit code 1 at the command
/// line) and broken internal invariants (exit code 2). The latter indicate a
/// bug rather than a malformed request.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("series is not a unit (zero constant term)")]
    NonUnit,

    #[error("exponent {exponent:?} lies outside truncation caps {caps:?}")]
    OutOfCaps { exponent: Vec<u32>, caps: Vec<u32> },

    #[error("operands live in different algebras: {0}")]
    ContextMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("terms have different degrees ({first} and {other})")]
    MixedDegree { first: u32, other: u32 },

    #[error("degree mismatch: insertion has {found}, expected {expected}")]
    DegreeMismatch { expected: i64, found: i64 },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl Error {
    /// Stable machine-readable identifier for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::NotRational(_) => "not-rational",
            Error::NonUnit => "non-unit",
            Error::OutOfCaps { .. } => "out-of-caps",
            Error::ContextMismatch(_) => "context-mismatch",
            Error::Precondition(_) => "precondition",
            Error::Syntax { .. } => "syntax",
            Error::IndexOutOfRange(_) => "index-out-of-range",
            Error::MixedDegree { .. } => "mixed-degree",
            Error::DegreeMismatch { .. } => "degree-mismatch",
            Error::InvalidProblem(_) => "invalid-problem",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Invariant(_) => "invariant",
        }
    }

    /// True when the error signals a bug in the engines rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Invariant(_) | Error::NotRational(_) | Error::ContextMismatch(_)
        )
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_internal() {
            2
        } else {
            1
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
