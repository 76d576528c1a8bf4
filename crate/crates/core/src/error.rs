use thiserror::Error;

/// Position-annotated failure from one of the text-form parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("m must be nonzero; for m = 0 use the roll-spin obstruction (obstruct_roll_spin)")]
    ZeroTwist,

    #[error("generator {index} has no abelianization weight")]
    MissingWeight { index: usize },

    #[error("relator {index} has nonzero total weight {weight}")]
    RelatorWeightNonzero { index: usize, weight: i64 },

    #[error("longitude has nonzero total weight {weight}")]
    LongitudeWeightNonzero { weight: i64 },

    #[error("presentation has no longitude; spin constructions need one")]
    NoLongitude,

    #[error("operation requires a Wirtinger-type presentation (all generator weights 1)")]
    NonWirtinger,

    #[error("braid closure is a link with {components} components, not a knot")]
    NotAKnot { components: usize },

    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: i64, b: i64 },

    #[error("tau sequence is not stabilized; extend it before building a graded root")]
    NotStabilized,

    #[error("reflection is not a grading-preserving automorphism of this graded root")]
    AsymmetricRoot,

    #[error("transfer rule needs m + 2n = 2 (mod 4); got m = {m}, n = {n}")]
    TransferInapplicable { m: i64, n: i64 },

    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
