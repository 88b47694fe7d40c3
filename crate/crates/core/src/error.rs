use thiserror::Error;

/// Errors shared by every method in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (dimension mismatches, missing moments, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A configuration that cannot produce meaningful results (atom collisions,
    /// grids too large, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// An iterative kernel failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Atom/weight extraction broke down (rank deficiency, vanishing denominator).
    #[error("extraction error: {0}")]
    Extraction(String),

    /// An atom could not be mapped back to an integer exponent.
    #[error("decode error: {0}")]
    Decode(String),

    /// An optimization solve ended in a non-optimal status.
    #[error("solve error: {0}")]
    Solve(String),
}

pub type Result<T> = std::result::Result<T, Error>;
