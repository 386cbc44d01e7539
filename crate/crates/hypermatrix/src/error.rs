//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by hypermatrix construction and algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HmError {
    /// A shape had a zero/negative dimension or no dimensions at all.
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    /// A multi-index or flat index fell outside the shape.
    #[error("index {index:?} out of range for shape {dims:?}")]
    IndexOutOfRange { index: Vec<usize>, dims: Vec<usize> },

    /// Operand dimensions are incompatible; the message names the shapes
    /// or the specific violated constraint.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A labeled generator was asked for a dimension whose indices do not
    /// fit in a single decimal digit.
    #[error("label ambiguity: {0}")]
    LabelAmbiguity(String),

    /// An atom name was empty or not an identifier.
    #[error("invalid atom name: {0:?}")]
    InvalidAtom(String),

    /// The scalar type does not support the requested operation.
    #[error("unsupported scalar operation: {0}")]
    UnsupportedScalar(String),

    /// The operation is not defined for this input.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Symbolic evaluation hit an atom with no binding.
    #[error("no binding for atom {0:?}")]
    MissingBinding(String),

    /// The image list is not a bijection on 0..n.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// Slice actions are only reliable for involutions; compose
    /// transpositions to act by a general permutation.
    #[error("permutation {0:?} is not an involution; apply it as a sequence of transpositions")]
    NotInvolution(Vec<usize>),

    /// A real parameter fell outside the required open interval.
    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// Composition powers exist only for odd orders.
    #[error("composition order must be odd, got {0}")]
    EvenOrder(usize),

    /// Too few operands for the general product.
    #[error("general product requires at least 2 operands, got {0}")]
    OperandCount(usize),

    /// A slice matrix of the inverse-pair system is singular.
    #[error("singular slice matrix at (m={m}, p={p})")]
    SingularSlice { m: usize, p: usize },

    /// A constraint referenced a variable missing from the unknown list.
    #[error("unknown variable {0:?} in constraint")]
    UnknownVariable(String),

    /// Text could not be parsed as an expression or scalar.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HmError>;
