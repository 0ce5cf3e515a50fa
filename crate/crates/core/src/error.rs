use thiserror::Error;

use crate::lattice::Point;
use crate::pgm::PgmError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point {0} is not in the image")]
    NotInImage(Point),

    #[error("not an involution: {0}")]
    NotAnInvolution(String),

    /// An adjacent pair whose images lie in different codomain components,
    /// so no Lipschitz constant exists.
    #[error("adjacent points {a} and {b} map to different codomain components")]
    DisconnectedCodomain { a: Point, b: Point },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A search that a theorem guarantees to succeed came back empty. Either the
    /// implementation or the theorem is wrong; callers report this as a finding.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error(transparent)]
    Pgm(#[from] PgmError),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
