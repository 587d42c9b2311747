//! Error type shared by the whole crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failures surfaced by the library.
///
/// The variants mirror the CLI exit-code classes: `Parse` and `Input` are
/// caller mistakes (exit 3), `Budget` is a refused oversized search (exit 2),
/// and `Internal` signals a broken invariant that theory guarantees — i.e. a
/// bug worth a loud report (exit 1).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed graph text; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally valid input outside an operation's domain
    /// (e.g. a non-elliptic graph passed to an elliptic-sequence routine).
    #[error("{0}")]
    Input(String),

    /// A search refused to start or continue because it would exceed the
    /// configured state budget. Never a silent approximation.
    #[error("state budget exceeded: {states} states required, limit {limit}")]
    Budget { states: u128, limit: u64 },

    /// A theory-guaranteed invariant failed at run time; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Shorthand for an [`Error::Input`] from anything displayable.
    pub fn input(msg: impl std::fmt::Display) -> Self {
        Error::Input(msg.to_string())
    }

    /// Shorthand for an [`Error::Internal`] from anything displayable.
    pub fn internal(msg: impl std::fmt::Display) -> Self {
        Error::Internal(msg.to_string())
    }
}
