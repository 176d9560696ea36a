use num_bigint::BigInt;
use thiserror::Error;

/// Which kind of line of a matrix is involved in a [`Error::DegenerateRelations`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Line::Row => f.write_str("row"),
            Line::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a matrix needs at least one row and one column")]
    EmptyMatrix,

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("{found} entries cannot fill a {rows}x{cols} matrix")]
    EntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },

    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("entry ({row}, {col}) is negative")]
    NotNonnegative { row: usize, col: usize },

    #[error("{line} {index} is zero; the partial isometry relations degenerate")]
    DegenerateRelations { line: Line, index: usize },

    #[error("determinant is {det}, expected +1 or -1")]
    NotUnimodular { det: BigInt },

    #[error("the zero matrix has no edge graph")]
    ZeroMatrix,

    #[error("edge graph with {0} arcs is too large to materialize")]
    TooLarge(BigInt),
}

pub type Result<T> = std::result::Result<T, Error>;
