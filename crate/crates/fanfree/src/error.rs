use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid move: {0}")]
    Move(String),

    #[error("graph6 parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("m = {m} exceeds the feasibility cap {cap}; pass force to override")]
    Capacity { m: usize, cap: usize },

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
