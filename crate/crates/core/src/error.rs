use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed polynomial text; `line` and `col` are 1-based within the expression.
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("truncation at degree {degree} needs a basis of size {size}, above the cap {cap}")]
    Resource { degree: usize, size: usize, cap: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("no stabilization within the window; increase truncation ({0})")]
    NoStabilization(String),

    #[error("matrix factorization rejected: {0}")]
    Validation(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by the caller's input map to exit code 2 in the CLI.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::Input(_) | Error::Dimension(_) | Error::Validation(_)
        )
    }
}
