use alloc::string::String;

use crate::MAX_ORDER;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("jet length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("order m = {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("non-finite values after step {step}")]
    Instability { step: usize },

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("unsupported mode: {0}")]
    Unsupported(&'static str),

    #[error("insufficient data: {usable} usable points, at least {required} required")]
    InsufficientData { usable: usize, required: usize },

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
}
