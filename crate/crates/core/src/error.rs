use thiserror::Error;

use crate::IndexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A subset was required to lie inside some domain and does not.
    #[error("index set {set:?} is not contained in {domain:?}")]
    Domain { set: IndexSet, domain: IndexSet },

    /// Two families disagree on a shared index.
    #[error("families are incompatible at index {index}")]
    Incompatible { index: usize },

    /// Materializing the result would exceed the tuple cap.
    #[error("capacity exceeded: {required} tuples required, cap is {cap}")]
    Capacity { required: u128, cap: u128 },

    /// Objects from different universes were combined.
    #[error("objects belong to different universes")]
    UniverseMismatch,

    #[error("invalid universe: {0}")]
    InvalidUniverse(String),

    #[error("unknown index name `{0}`")]
    UnknownIndex(String),

    #[error("unknown value `{value}` for index `{index}`")]
    UnknownValue { index: String, value: String },

    #[error("value code {code} out of range for index {index}")]
    ValueOutOfRange { index: usize, code: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}
