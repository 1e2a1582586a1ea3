//! Error type shared by every module of the crate.

use thiserror::Error;

/// Position-annotated parse failure with the set of tokens that would
/// have been accepted at that position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseErrorDetail {
    /// Byte offset into the input where parsing stopped.
    pub pos: usize,
    /// Human-readable descriptions of the tokens expected at `pos`.
    pub expected: Vec<String>,
}

impl std::fmt::Display for ParseErrorDetail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at byte {}: expected {}", self.pos, self.expected.join(" | "))
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("operands live in different variable spaces")]
    SpaceMismatch,
    #[error("expected {expected} images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("the zero polynomial has no degree or leading term")]
    ZeroPolynomial,
    #[error("parse error {0}")]
    Parse(ParseErrorDetail),
    #[error("dimension {0} is not supported here")]
    BadDimension(usize),
    #[error("class tag has the wrong kind for this transition")]
    WrongKind,
    #[error("the zero vector is not allowed here")]
    ZeroVector,
    #[error("scalar parameter must be nonzero")]
    ZeroScalar,
    #[error("exponential did not terminate within {cap} steps")]
    ExpDiverged { cap: u64 },
    #[error("coefficient is not in the kernel of the derivation")]
    NotInKernel,
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("no inverse is available for this map")]
    NoInverseAvailable,
    #[error("map is affine; the conjugation test needs a non-affine input")]
    AffineInput,
    #[error("invalid word: {0}")]
    InvalidWord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
