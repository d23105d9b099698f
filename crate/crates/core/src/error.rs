use thiserror::Error;

use crate::tableau::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid shape: {0}")]
    Shape(String),
    #[error("tableau is not standard: {0}")]
    NotStandard(Violation),
    #[error("row sizes are not weakly decreasing: {0:?}")]
    RowsNotWeaklyDecreasing(Vec<usize>),
    #[error("invalid word: {0}")]
    Word(String),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("cell (row {row}, column {col}) is not an inner corner")]
    NotInnerCorner { row: usize, col: usize },
    #[error("oracle cap exceeded: {letters} distinct letters, cap is {cap}")]
    OracleCap { letters: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("blocked: {0}")]
    Blocked(String),
    #[error("cell (column {col}, row {row}) lies outside the matrix")]
    OutOfBounds { col: usize, row: usize },
    #[error("invalid lattice path: {0}")]
    Path(String),
    #[error("parameters out of domain: {0}")]
    Domain(String),
    #[error("no stabilization found for k up to {cap}")]
    StabCap { cap: usize },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;
