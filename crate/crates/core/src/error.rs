use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {requested} exceeds the working cap {cap}")]
    CappedDegree { requested: u32, cap: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator lists do not match: {0}")]
    MismatchedGenerators(String),
    #[error("polynomial is not invariant: {0}")]
    NonInvariantInput(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("blocks do not fit: {0}")]
    BlocksDoNotFit(String),
    #[error("embedding mismatch: {0}")]
    EmbeddingMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid differential: {0}")]
    InvalidDifferential(String),
    #[error("model is not pure: {0}")]
    NotPure(String),
    #[error("model is not minimal: {0}")]
    NotMinimal(String),
    #[error("products are not exact: {0}")]
    ProductsNotExact(String),
    #[error("rule does not apply: {0}")]
    RuleNotApplicable(String),
    #[error("parse error at offset {offset}: expected {expected}, found {found}")]
    Parse { offset: usize, expected: String, found: String },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CappedDegree { .. } => "CappedDegree",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::MismatchedGenerators(_) => "MismatchedGenerators",
            Error::NonInvariantInput(_) => "NonInvariantInput",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::BlocksDoNotFit(_) => "BlocksDoNotFit",
            Error::EmbeddingMismatch(_) => "EmbeddingMismatch",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::InvalidDifferential(_) => "InvalidDifferential",
            Error::NotPure(_) => "NotPure",
            Error::NotMinimal(_) => "NotMinimal",
            Error::ProductsNotExact(_) => "ProductsNotExact",
            Error::RuleNotApplicable(_) => "RuleNotApplicable",
            Error::Parse { .. } => "ParseError",
            Error::InternalInconsistency(_) => "InternalInconsistency",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
