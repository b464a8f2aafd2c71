use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),

    #[error("degenerate tangent monomial matrix: {0}")]
    DegenerateRow(String),

    #[error("unsupported family dimension {dim} (branch {branch})")]
    UnsupportedFamilyDimension { dim: usize, branch: String },

    #[error("contained stratum {stratum:?} of {ws} has no tangent variable")]
    NoTangentVariable { ws: String, stratum: Vec<usize> },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
