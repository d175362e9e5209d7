use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation: {0}")]
    Parse(String),
    #[error("point {0} out of range for degree {1}")]
    PointOutOfRange(u64, u32),
    #[error("repeated point {0} in cycle notation")]
    RepeatedPoint(u64),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("element is not a member of the group")]
    NotMember,
    #[error("given subgroup is not contained in the group")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("bound exceeded: {0}")]
    BoundExceeded(&'static str),
    #[error("class census could not be certified complete")]
    Uncertified,
    #[error("stored group data failed validation: {0}")]
    Validation(String),
    #[error("io: {0}")]
    Io(String),
}
