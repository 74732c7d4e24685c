use thiserror::Error;

use crate::poly::Variable;

/// Errors surfaced by the library. Everything else is exact arithmetic and
/// cannot fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A monomial mentions a variable the active order does not rank, i.e.
    /// the value belongs to a different ring context.
    #[error("variable {0} is not ranked by the monomial order")]
    UnrankedVariable(Variable),

    #[error("the zero polynomial has no leading term")]
    ZeroLeadingTerm,

    #[error("zero polynomial passed to {0}")]
    ZeroPolynomial(&'static str),

    #[error("empty generating set passed to {0}")]
    EmptyGenerators(&'static str),

    #[error("row and column selections differ in length ({rows} vs {cols})")]
    MinorShapeMismatch { rows: usize, cols: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("row tuple entries must be positive and strictly increasing")]
    BadRowTuple,

    #[error("column {m} must be at least the tuple length {k}")]
    ColumnBelowTupleLength { m: u32, k: u32 },

    #[error("syzygy column {j} must satisfy 1 <= j <= {k}")]
    SyzygyColumnOutOfRange { j: u32, k: u32 },

    #[error("the elimination variable already occurs in the input")]
    EliminationVariableInUse,

    /// Exact division left a nonzero remainder where none is possible; this
    /// signals a bug in the elimination pipeline, not bad user input.
    #[error("exact division failed: {0}")]
    ExactDivisionFailed(String),

    #[error("cancellation at ({i},{j}) exceeds the available ranks")]
    BadCancellation { i: u32, j: u32 },

    /// Raised from inside long-running basis computations when the caller
    /// installed a deadline; reported as an aborted run, not a failed check.
    #[error("the time budget was exhausted")]
    BudgetExceeded,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid shape `{0}`; expected square:n, symmetric:n or wide:n")]
    Shape(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
