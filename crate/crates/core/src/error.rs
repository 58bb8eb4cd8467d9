use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label `{0}` is not part of the ambient basis")]
    LabelOutsideBasis(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("path does not belong to this quiver: {0}")]
    ForeignPath(String),

    #[error("quiver has an oriented cycle through `{0}`")]
    Cyclic(String),

    #[error("quiver has no oriented cycle")]
    NoCycle,

    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("functional does not vanish on the subcoalgebra: nonzero on `{0}`")]
    NotInPerp(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
