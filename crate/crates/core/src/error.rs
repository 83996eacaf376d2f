//! Error type shared by all modules.

/// Errors surfaced by the library.
///
/// `Domain` covers violated preconditions and hypothesis violations (a check
/// asked for parameters outside a bound's stated hypothesis). `EmptyRange`
/// is raised when a requested sweep range has empty intersection with the
/// hypothesis region — silence there would look like a passing sweep.
/// `Checkpoint` covers malformed or inconsistent resume data, and
/// `Integrity` marks internal cross-checks that should be unreachable
/// (e.g. a certified window whose `k` disagrees with the threshold search).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty effective range: {0}")]
    EmptyRange(String),

    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),

    #[error("internal consistency violation: {0}")]
    Integrity(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
