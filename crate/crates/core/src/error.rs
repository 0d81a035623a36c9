//! Error taxonomy shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while parsing, evaluating, or analysing
/// running-time functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The expression text violates the grammar. `position` is a byte offset
    /// into the input.
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },

    /// An identifier that is neither `n` nor a known function name.
    #[error("unknown identifier `{name}` at offset {position}")]
    UnknownIdentifier { name: String, position: usize },

    /// Evaluation left the admissible domain (non-positive value, log of a
    /// non-positive argument, division by zero, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested a closed-form constant for a pair that has none.
    #[error("no closed form is tabulated for pair `{0}`")]
    UnknownPair(String),

    /// A scaling factor left the representable range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The two inputs have symmetrised distance zero at the truncation
    /// horizon, so no iterate can separate them.
    #[error("inputs are indistinguishable at truncation N = {truncation}")]
    InputsIndistinguishable { truncation: u32 },

    /// A parameter violates its precondition (range, sign, emptiness).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The iterative and closed-form membership criteria disagree away from
    /// the decision boundary.
    #[error("inconsistent membership criteria: {0}")]
    InconsistentCriteria(String),
}
