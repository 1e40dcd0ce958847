use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation `{0}` is not a composable path")]
    NotComposable(String),
    #[error("presentation has no vertices")]
    NoVertices,
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("not a string algebra: {0}")]
    NotAStringAlgebra(String),
    #[error("sign constraints are inconsistent: odd cycle through {0}")]
    InconsistentSigns(String),
    #[error("invalid word literal `{literal}`: {reason}")]
    BadWord { literal: String, reason: String },
    #[error("words are not composable")]
    WordsNotComposable,
    #[error("result is not a string")]
    NotAString,
    #[error("not a band")]
    NotABand,
    #[error("word is not in the hammock")]
    NotInHammock,
    #[error("operator is undefined")]
    UndefinedOperator,
    #[error("graded index {index} exceeds {max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("word does not extend the base with an inverse syllable")]
    NotAnInclusionShape,
    #[error("`{0}` is not an image substring of the band's periodic word")]
    NotAnImageSubstring(String),
    #[error("`{0}` is not a factor substring of the band's periodic word")]
    NotAFactorSubstring(String),
    #[error("invalid graph map descriptor: {0}")]
    BadDescriptor(String),
    #[error("algebra is not meta-torsion-free")]
    NotMetaTorsionFree,
    #[error("invalid path: {0}")]
    BadPath(String),
}

pub type Result<T> = std::result::Result<T, Error>;
