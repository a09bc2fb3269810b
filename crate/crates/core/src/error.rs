use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("no image given for generator `{0}`")]
    UndefinedGenerator(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("search budget exhausted after {states} states")]
    BudgetExhausted { states: usize },
    #[error("vertex `{0}` is not interior to the ball")]
    PartialLink(String),
    #[error("embedding does not close up: {0}")]
    Inconsistent(String),
    #[error("half-plane intersection is unbounded")]
    Unbounded,
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("polygon vertex has no matching tiling vertex: {0}")]
    UnmatchedVertex(String),
    #[error("side has no partner: {0}")]
    UnpairedSide(String),
    #[error("cycle condition fails: {0}")]
    CycleCondition(String),
    #[error("elimination of `{0}` is not justified by a relator")]
    UnjustifiedElimination(String),
    #[error("presentation is not C'(1/6): piece ratio {0}")]
    NotSmallCancellation(String),
    #[error("certificate does not replay: {0}")]
    BadCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
