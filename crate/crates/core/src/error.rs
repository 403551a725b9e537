use thiserror::Error;

/// Coarse classification used for exit codes and FFI status values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Certification,
    Invariant,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("ill-formed input: {0}")]
    IllFormed(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not an idempotent: {0}")]
    NotIdempotent(String),

    #[error("principal factor is not completely 0-simple: {0}")]
    NotCompletelyZeroSimple(String),

    #[error("element of span {span} is not in the ideal (span >= {k} required)")]
    NotInIdeal { span: i64, k: i64 },

    #[error("certification failed at bound {bound} (escape cap {cap}): {detail}; raise the bound or the cap")]
    CertificationFailed { bound: u64, cap: u64, detail: String },

    #[error("undecided at span cap {cap}: {detail}; raise the cap")]
    Undecided { cap: i64, detail: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::CertificationFailed { .. } | Error::Undecided { .. } => ErrorKind::Certification,
            Error::Invariant(_) => ErrorKind::Invariant,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure_invariant {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($arg)*)));
        }
    };
}
pub(crate) use ensure_invariant;
