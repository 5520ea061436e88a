//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by graph construction, simulation, training, and the
/// analysis helpers.
#[derive(Debug, Error)]
pub enum Error {
    /// Structural problem with a graph, formula, or instance definition.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// An exact method was asked to run past its size guard.
    #[error("instance too large: {context} (size {size}, limit {limit})")]
    TooLarge {
        context: &'static str,
        size: usize,
        limit: usize,
    },

    /// Mismatched vector lengths, qubit counts, or parameter layouts.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A caller-supplied value is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Text input that does not parse as the expected format.
    #[error("parse error: {0}")]
    Parse(String),

    /// A numerical fit could not be performed on the given data.
    #[error("fit error: {0}")]
    Fit(String),

    /// A removal schedule could not be built under its constraints.
    #[error("schedule error: {0}")]
    Schedule(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
