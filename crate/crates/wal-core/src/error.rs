use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown letter '{0}'")]
    UnknownLetter(char),
    #[error("unknown state '{0}'")]
    UnknownState(String),
    #[error("enumeration over an all-zero generator risks an infinite solution set")]
    InfiniteSetRisk,
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(
        "literalization check failed on '{word}': expected {expected}, got {got} \
         (evidence that the supplied coefficients are not in the unrestricted solution set)"
    )]
    LiteralizeValidation {
        word: String,
        expected: String,
        got: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
