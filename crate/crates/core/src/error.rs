use thiserror::Error;

use crate::precision::Enclosure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid index {index}: {reason}")]
    InvalidIndex { index: u64, reason: &'static str },

    #[error("argument out of domain: {0}")]
    Domain(String),

    /// The requested width or decision could not be reached within the
    /// configured number of precision doublings. Carries the best enclosure.
    #[error("precision exhausted at {bits} bits (best enclosure width {width})")]
    PrecisionExhausted {
        bits: u32,
        width: String,
        best: Box<Enclosure>,
    },

    #[error("interval division by an enclosure containing zero")]
    ZeroDivisor,

    #[error("parse error: {0}")]
    Parse(String),
}
