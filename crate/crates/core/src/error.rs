use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Shape(String),

    #[error("multiplicity of component {index} must be at least 1")]
    NonPositiveMultiplicity { index: usize },

    #[error("self-intersection of component {index} is not integral: {numerator} is not divisible by {multiplicity}")]
    Divisibility {
        index: usize,
        numerator: String,
        multiplicity: String,
    },

    #[error("unknown Kodaira type `{0}`")]
    UnknownKodaira(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("vector has length {found}, expected {expected}")]
    Length { expected: usize, found: usize },

    #[error("vector {0} is not torsion (nonzero degree)")]
    NotTorsion(String),

    #[error("component group has order {order}, above the brute-force bound {bound}")]
    BoundExceeded { order: String, bound: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("support clash: {0}")]
    SupportClash(String),

    #[error("zero-cycle has degree {0}, expected 0")]
    NonzeroDegree(String),

    #[error("{0}")]
    NotIrreducible(String),

    #[error("order is not maximal at {prime}: {reason}")]
    NotPMaximal { prime: u64, reason: String },

    #[error("invalid polynomial input: {0}")]
    Polynomial(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
