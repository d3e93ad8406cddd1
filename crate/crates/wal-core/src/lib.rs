pub mod classify;
pub mod error;
pub mod hankel;
pub mod hypothesis;
pub mod learner;
pub mod semiring;
pub mod solve;
pub mod wfa;
pub mod words;

pub use error::{Error, Result};
