use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors are split into three families that the CLI maps onto exit codes:
/// usage/validation problems with the caller's input, and internal
/// inconsistencies that indicate a bug or an unlucky random choice.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("input must be squarefree")]
    NotSquarefree,

    #[error(
        "degree {d} is below the dimension {n}: every hypersurface of degree at most n-1 \
         is ruled, so its flex locus is the whole hypersurface"
    )]
    DegreeBelowDimension { n: usize, d: u32 },

    #[error("characteristic {p} is too small for degree {d} (need p > {d})")]
    CharacteristicTooSmall { p: u64, d: u32 },

    #[error("field has {available} elements but {needed} distinct samples are required")]
    FieldTooSmall { needed: u128, available: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("point is not on the hypersurface")]
    NotOnHypersurface,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by the input rather than by the computation.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
