use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
///
/// Validation failures that are part of a report (simplicial identity
/// violations, cover defects) are returned as data, not through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed delta-set at `{label}`: {reason}")]
    Malformed { label: String, reason: String },

    #[error("simplex `{0}` not found")]
    UnknownSimplex(String),

    #[error("invalid face injection: {0}")]
    InvalidInjection(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "simplicial complex is not closed under faces: missing face {missing:?} of {simplex:?}"
    )]
    MissingFace {
        simplex: Vec<String>,
        missing: Vec<String>,
    },

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("not a delta-map: {0}")]
    InvalidMap(String),

    #[error("sub-delta-set is not closed under faces at `{0}`")]
    NotFaceClosed(String),

    #[error("map does not target the barycentric subdivision: {0}")]
    NotIntoSubdivision(String),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("differential does not square to zero at degree {0}")]
    NotAComplex(i64),

    #[error("base, variance or ring mismatch: {0}")]
    Incompatible(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
