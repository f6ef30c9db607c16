//! Error type shared across the crate.

use std::fmt;

use crate::field::FieldDescriptor;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, WeylError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeylError {
    /// Division or inversion with a zero divisor.
    DivisionByZero,
    /// Two operands belong to different coefficient fields.
    FieldMismatch {
        left: FieldDescriptor,
        right: FieldDescriptor,
    },
    /// A prime-field modulus is too small for a required factorial or
    /// point count.
    CharacteristicTooSmall { modulus: u64, required: u64 },
    /// The requested prime-field modulus failed the primality check.
    NotPrime(u64),
    /// The requested prime-field modulus exceeds the supported range.
    ModulusTooLarge(u64),
    /// Matrix shapes are not conformable.
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// Two block-diagonal matrices have different block counts.
    BlockCountMismatch { left: usize, right: usize },
    /// Interpolation points are not pairwise distinct.
    DuplicatePoints,
    /// A structural invariant of an input specification is violated.
    InvalidSpec(String),
    /// A matrix claimed to be an operator evaluation matrix is not one.
    InconsistentMatrix(String),
    /// An operation precondition does not hold.
    PreconditionViolated(String),
    /// Textual or JSON input could not be parsed.
    Parse(String),
}

impl fmt::Display for WeylError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylError::DivisionByZero => write!(f, "division by zero"),
            WeylError::FieldMismatch { left, right } => {
                write!(f, "field mismatch: {left} vs {right}")
            }
            WeylError::CharacteristicTooSmall { modulus, required } => write!(
                f,
                "characteristic too small: modulus {modulus} must exceed {required}"
            ),
            WeylError::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            WeylError::ModulusTooLarge(p) => {
                write!(f, "modulus {p} exceeds the supported range (< 2^63)")
            }
            WeylError::ShapeMismatch { left, right } => write!(
                f,
                "shape mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            WeylError::BlockCountMismatch { left, right } => {
                write!(f, "block count mismatch: {left} vs {right}")
            }
            WeylError::DuplicatePoints => write!(f, "evaluation points are not pairwise distinct"),
            WeylError::InvalidSpec(msg) => write!(f, "invalid specification: {msg}"),
            WeylError::InconsistentMatrix(msg) => write!(f, "inconsistent matrix: {msg}"),
            WeylError::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
            WeylError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for WeylError {}
