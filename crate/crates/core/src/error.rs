use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("link fails the L-space gate: {0}")]
    Obstructed(String),
    #[error("unsupported framing ({p1}, {p2}): {reason}")]
    UnsupportedFraming { p1: i64, p2: i64, reason: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
