use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator index {index} out of range for alphabet of rank {rank}")]
    GeneratorIndex { index: usize, rank: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("words belong to different alphabets")]
    AlphabetMismatch,

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("series truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("series is not a unit (scalar term is zero)")]
    NotAUnit,

    #[error("scalar term must be exactly 1")]
    ScalarNotOne,

    #[error("degree {degree} exceeds truncation {trunc}")]
    DegreeOutOfRange { degree: usize, trunc: usize },

    #[error("metric is only defined on the ideal of series with zero scalar term")]
    NotInIdeal,

    #[error("the identity word has no {0}")]
    IdentityWord(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(pos: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            message: message.into(),
        }
    }
}
