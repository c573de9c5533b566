use thiserror::Error;

/// Errors surfaced by the engine. Every variant carries enough context to
/// name the violated rule or the offending input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("mixed-field arithmetic: {0}")]
    MixedField(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported structure: {0}")]
    Unsupported(String),
    #[error("truncation window violated: {0}")]
    Window(String),
    #[error("undefined product: {0}")]
    UndefinedProduct(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
