use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AffineError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no irreducible polynomial found (degree {0})")]
    NoIrreducible(u32),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("element does not have the required order")]
    WrongOrder,
    #[error("stabilizer is not transitive on the nonzero vectors")]
    NotTransitive,
    #[error("bound exceeded: {0}")]
    BoundExceeded(&'static str),
    #[error("field too large: {0}")]
    FieldTooLarge(u64),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("group engine: {0}")]
    Perm(#[from] permcore::PermError),
}
