use thiserror::Error;

use crate::tqft::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scalars live in different fields: {0} vs {1}")]
    DescriptorMismatch(String, String),

    #[error("attempt to invert zero")]
    ZeroInverse,

    #[error("x^2 - ({v})x - ({u}) is reducible over Q")]
    ReducibleField { u: String, v: String },

    #[error("matrix [[{p},{r}],[{q},{s}]] has determinant {det}, expected 1")]
    NotSpecialLinear {
        p: String,
        r: String,
        q: String,
        s: String,
        det: String,
    },

    #[error("continued fraction of {0}/0 is undefined")]
    ZeroDenominator(String),

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("invalid Funar triple: {0}")]
    FunarPrecondition(String),

    #[error("unknown built-in TQFT `{0}` (expected F1, F2 or F3)")]
    UnknownBuiltin(String),

    #[error("TQFT `{0}` has no unit; solid-torus arrows cannot be evaluated")]
    MissingUnit(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("TQFT data failed validation:\n{0}")]
    Validation(Box<ValidationReport>),

    #[error("unknown table `{0}`")]
    UnknownTable(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
