use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid scroll spec: {0}")]
    InvalidSpec(String),

    #[error("invalid projection: {0}")]
    InvalidProjection(String),

    #[error("vector is not in the kernel of the configuration matrix")]
    NotInKernel,

    #[error("colored identity is not color-homogeneous")]
    NotColorHomogeneous,

    #[error("configuration is not homogeneous (no all-ones row)")]
    Inhomogeneous,

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("configuration exceeds engine limits: {0}")]
    TooLarge(String),

    #[error("deadline exceeded")]
    Timeout,

    #[error("cross-check failed: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),
}
