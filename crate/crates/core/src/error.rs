use std::fmt;

use crate::lattice::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("coordinate (row {row}, col {col}) is outside the shape of a height-{height} lattice")]
    CoordOutOfShape { row: usize, col: usize, height: usize },

    #[error("flat index {index} is outside the shape of a height-{height} lattice")]
    IndexOutOfShape { index: usize, height: usize },

    #[error("key {0} is outside the key domain [1, 2147483646]")]
    KeyOutOfDomain(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("line {line}: expected a decimal key, found {text:?}")]
    MalformedKey { line: usize, text: String },

    #[error("duplicate key {0}")]
    DuplicateKey(u32),

    #[error("expected {expected} keys, found {found}")]
    KeyCount { expected: usize, found: usize },

    #[error("structurally invalid lattice: {0}")]
    Invalid(Report),

    #[error("build failed: {0}")]
    Build(String),

    #[error("scenario failed: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for failures of the underlying reader or writer rather than of
    /// the data itself.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) => true,
            Error::Csv(e) => e.is_io_error(),
            _ => false,
        }
    }
}

/// A non-empty list of violations carried by [`Error::Invalid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report(pub Vec<Violation>);

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 8;
        for (i, v) in self.0.iter().take(SHOWN).enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        if self.0.len() > SHOWN {
            write!(f, "; and {} more", self.0.len() - SHOWN)?;
        }
        Ok(())
    }
}
