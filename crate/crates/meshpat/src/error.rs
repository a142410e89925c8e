//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by the library.
///
/// `Parse` covers malformed textual input (pattern specs, class
/// descriptors, series ids). `InvalidInput` covers structurally
/// impossible requests, such as a word that is not a permutation or a
/// block class that does not fit inside S_n. `ResourceLimit` is raised
/// when an exhaustive enumeration would exceed the configured cap.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
