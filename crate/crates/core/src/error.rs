use thiserror::Error;

/// Errors surfaced by the library operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable `{0}` has no value at the evaluation point")]
    MissingVariable(String),
    #[error("algebra kind carries no grading")]
    NotGraded,
    #[error("structure constant table has no entry for `{0} * {1}`")]
    TableMiss(String, String),
    #[error("multiset height {height} exceeds tensor power {power}")]
    HeightExceedsPower { height: usize, power: usize },
    #[error("tensor is not fixed by the slot transposition ({0} {1})")]
    NotInvariant(usize, usize),
    #[error("expected a multiset of size {expected}, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("product of the given factors is not a basis word")]
    NotAWord,
    #[error("matrix size mismatch: {0}")]
    SizeMismatch(String),
    #[error("operation unsupported for this algebra kind")]
    UnsupportedKind,
    #[error("matrices at positions {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("tensor monomial does not lie in the algebra (slot {0})")]
    NotInAlgebra(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
