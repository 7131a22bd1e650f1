use crate::index::Grade;

/// Errors raised by parsing, validation and budgeted enumeration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("dimension mismatch: expected vectors of length {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("generator {generator} is not valid in space {space}")]
    InvalidGenerator { generator: String, space: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("budget {budget} is below the required grade {required}")]
    Budget { budget: Grade, required: Grade },
    #[error("monomial of homogeneity {homogeneity} lies beyond the series cutoff {cutoff}")]
    Truncation { homogeneity: Grade, cutoff: Grade },
}

pub type Result<T> = std::result::Result<T, Error>;
