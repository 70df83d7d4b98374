use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid presentation: {message} (at `{token}`)")]
    InvalidPresentation { token: String, message: String },

    #[error("relation {relation} is not admissible: path `{path}` has length < 2")]
    Admissibility { relation: usize, path: String },

    #[error("algebra is not finite-dimensional within path length bound {bound}")]
    NotFiniteDimensional { bound: usize },

    #[error("unknown fixture tag `{0}`")]
    UnknownTag(String),

    #[error("vertex {vertex} out of range 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("could not split a module of dimension {dimension} with non-local endomorphism ring within the candidate budget")]
    DecompositionInconclusive { dimension: usize },

    #[error("resolution not exhausted within {max_len} steps")]
    BudgetExceeded { max_len: usize },

    #[error("expected projective dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: String },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("{theorem}: hypothesis unmet: {hypothesis}")]
    HypothesisUnmet { theorem: String, hypothesis: String },

    #[error("{0}: a complete list of indecomposables is unavailable")]
    IndecomposablesUnavailable(String),

    #[error("algebra is not Nakayama")]
    NotNakayama,

    #[error("atlas is incomplete: {0}")]
    AtlasIncomplete(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by malformed input rather than by a computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::InvalidPresentation { .. }
                | Error::Admissibility { .. }
                | Error::UnknownTag(_)
                | Error::VertexOutOfRange { .. }
                | Error::InvalidModule(_)
                | Error::UnknownTheorem(_)
        )
    }
}
