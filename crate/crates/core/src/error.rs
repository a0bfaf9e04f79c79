use thiserror::Error;

use crate::identity::ParseError;
use crate::scalar::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid scalar {input:?}: {reason}")]
    ParseScalar { input: String, reason: String },

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid variety: {0}")]
    InvalidVariety(String),

    #[error("product index {index} out of range for an algebra with {count} product(s)")]
    ProductIndex { index: usize, count: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("algebra violates identity #{identity} of {variety} at basis tuple {tuple:?}")]
    NotInVariety { variety: String, identity: usize, tuple: Vec<usize> },

    #[error("variety {variety} is not available in characteristic {characteristic}")]
    ExcludedCharacteristic { variety: String, characteristic: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("operator position {position} out of range for an identity of degree {degree}")]
    Position { position: usize, degree: usize },

    #[error("element does not lie in the actor space")]
    NotInActor,

    #[error("enumeration needs {needed} candidate tables but the budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("inconsistent construction: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
