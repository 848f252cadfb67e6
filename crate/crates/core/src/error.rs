use thiserror::Error;

use crate::field::Field;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid modulus {0}: expected an odd prime")]
    InvalidModulus(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("operator is singular")]
    Singular,

    #[error("invalid automorphism parameters: {0}")]
    InvalidParams(String),

    #[error("invalid subalgebra dimension {0}")]
    InvalidDim(usize),

    #[error("subspace is not closed under multiplication")]
    NotASubalgebra,

    #[error("subalgebra does not fit any known isomorphism class")]
    Unclassified,

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("weight mismatch: {0}")]
    WeightMismatch(String),

    #[error("bad reduction: {0}")]
    BadReduction(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// The variant name, for messages that need a stable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::DimMismatch { .. } => "DimMismatch",
            Error::Singular => "Singular",
            Error::InvalidParams(_) => "InvalidParams",
            Error::InvalidDim(_) => "InvalidDim",
            Error::NotASubalgebra => "NotASubalgebra",
            Error::Unclassified => "Unclassified",
            Error::DomainViolation(_) => "DomainViolation",
            Error::WeightMismatch(_) => "WeightMismatch",
            Error::BadReduction(_) => "BadReduction",
            Error::Infeasible(_) => "Infeasible",
            Error::UnknownFamily(_) => "UnknownFamily",
            Error::Parse(_) => "Parse",
        }
    }
}
