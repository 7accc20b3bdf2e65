use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("edge ({u}, {v}) is a self-loop")]
    SelfLoop { u: usize, v: usize },

    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },

    #[error("node {node} is outside 0..{n}")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("pin set is empty")]
    EmptyPinSet,

    #[error("pin set lists node {0} more than once")]
    DuplicatePin(usize),

    #[error("pin set covers all {0} nodes; nothing is left to ground")]
    PinSetCoversAll(usize),

    #[error("pin count {l} outside 1..={max}")]
    PinCountOutOfRange { l: usize, max: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix is not symmetric: |m[{row}][{col}] - m[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry [{row}][{col}] is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is empty")]
    EmptyMatrix,

    #[error("criterion not met: c * lambda1 = {c_lambda1} <= alpha = {alpha}")]
    CriterionNotMet { c_lambda1: f64, alpha: f64 },

    #[error("inner matrix c*L(S|S) - alpha*I is singular or indefinite")]
    SingularInner,

    #[error("enumeration needs C({n},{l}) = {combinations} subsets, budget is {budget}")]
    BudgetExceeded {
        n: usize,
        l: usize,
        combinations: u128,
        budget: u128,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
