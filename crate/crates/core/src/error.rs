use thiserror::Error;

/// Errors raised by the library. Each variant maps to a guarded precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{len}: {reason}")]
    NotAPermutation { len: usize, reason: String },
    #[error("permutation lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("bad k = {k}: {reason}")]
    BadK { k: usize, reason: String },
    #[error("bad m = {m}: must lie in 0..={max}")]
    BadM { m: usize, max: usize },
    #[error("n = {n} is odd; the four-corner construction needs even n")]
    OddN { n: usize },
    #[error("{what} = {value} exceeds the guard limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("method {method} is not available for {order} order")]
    MethodMismatch { method: String, order: &'static str },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn too_large(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::TooLarge { what, value, limit })
    } else {
        Ok(())
    }
}
