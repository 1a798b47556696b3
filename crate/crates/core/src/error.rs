use thiserror::Error;

use crate::numeric::Integer;
use crate::sets::Progression;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LipError {
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("discrete derivative is empty: no two consecutive x values")]
    NoConsecutivePair,

    #[error("x values are not consecutive integers")]
    NotConsecutive,

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("length mismatch: {expected} enumeration entries but {found} values")]
    LengthMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{x} lies outside the domain: {reason}")]
    Domain { x: Integer, reason: String },

    #[error("series did not stabilize within {cap} terms")]
    TruncationCap { cap: usize },

    #[error("search bound {bound} exhausted while choosing c_{index}")]
    SearchExhausted { index: usize, bound: u64 },

    #[error("point {x} is obstructed: gcd(x - a, a - b) != 1 (obstruction progression {progression})")]
    ObstructedPoint { x: Integer, progression: Progression },

    #[error("normal-form modulus {modulus} exceeds the cap {cap}")]
    ModulusTooLarge { modulus: Integer, cap: u64 },

    #[error("unsupported set expression: {0}")]
    Unsupported(String),

    #[error("{0}")]
    Parse(#[from] crate::sets::ParseError),

    #[error("malformed input: {0}")]
    Input(String),
}

impl LipError {
    /// Parse and malformed-input failures are usage errors; everything else is
    /// a precondition or domain failure of a well-formed request.
    pub fn is_usage(&self) -> bool {
        matches!(self, LipError::Parse(_) | LipError::Input(_))
    }
}

pub type Result<T, E = LipError> = std::result::Result<T, E>;
