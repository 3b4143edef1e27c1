use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("denominator vanishes at the evaluation point {point}")]
    PoleAtPoint { point: String },
    #[error("invalid evaluation point {point}: {reason}")]
    InvalidEvalPoint { point: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("image of column {column} is not contained in the target subspace")]
    Containment { column: usize },
    #[error("subspace is not weight-graded (witness basis vector {witness})")]
    NonGraded { witness: usize },
    #[error("degree budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("word {0:?} is not reduced")]
    NonReducedWord(Vec<usize>),
    #[error("operation requires a weight-preserving (standard) Hecke symmetry")]
    NonStandardR,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("weight ({0},{1},{2}) is not dominant")]
    NonDominant(i64, i64, i64),
    #[error("direct sum check failed: {0}")]
    DirectSum(String),
    #[error("operator is not invertible: {0}")]
    NonInvertible(String),
    #[error("exponent overflow: |{0}| exceeds the Laurent exponent bound")]
    ExponentOverflow(i64),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
