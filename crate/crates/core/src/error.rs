use thiserror::Error;

/// Errors surfaced by the public operations of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("composition {0} is not a partition")]
    NotPartition(String),

    #[error("element does not lie in the permutation module of shape {shape}: {detail}")]
    NotInModule { shape: String, detail: String },

    #[error("tableau is not row-standard")]
    NotRowStandard,

    #[error("tableau is standard; no violating row pair exists")]
    NoViolation,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("division is not exact: {0}")]
    InexactDivision(String),

    #[error("invalid specialization: {0}")]
    InvalidSpecialization(String),

    #[error("map from shape {source} to shape {target} is not in the phi-span: {detail}")]
    NotInPhiSpan {
        source: String,
        target: String,
        detail: String,
    },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("entry at q = {q0} is not an integer: {value}")]
    NotIntegral { q0: String, value: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
