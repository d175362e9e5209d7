use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("data file problem: {0}")]
    Data(String),
    #[error("unknown row or group id: {0}")]
    UnknownId(String),
    #[error("construction failed for {0}: {1}")]
    Construction(String, String),
    #[error("group engine: {0}")]
    Perm(#[from] permcore::PermError),
    #[error("matrix engine: {0}")]
    Affine(#[from] affine::AffineError),
    #[error("number theory: {0}")]
    Numth(#[from] numth::NumthError),
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),
}
