//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An arithmetic operation left the representable range of the active
    /// scalar mode. Carries the rendered operands for diagnosis.
    #[error("overflow in {op}: operands {lhs} and {rhs}")]
    Overflow {
        op: &'static str,
        lhs: String,
        rhs: String,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid interval: lower bound {lo} exceeds upper bound {hi}")]
    InvalidInterval { lo: String, hi: String },

    /// Intersection of two intervals is empty. At the matrix level the
    /// offending entry is reported; the iteration driver adds the step.
    #[error("empty intersection at entry ({row}, {col})")]
    EmptyIntersection {
        row: usize,
        col: usize,
        step: Option<usize>,
    },

    #[error("dimension mismatch in {context}: {left} vs {right}")]
    Dimension {
        context: &'static str,
        left: String,
        right: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// No scaling policy produced ||I - A/c|| < 1.
    #[error("no initial enclosure: {0}")]
    NoInitialEnclosure(String),

    #[error("no convergence after {iters} iterations: {context}")]
    NoConvergence { iters: usize, context: String },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

impl Error {
    pub(crate) fn dim(context: &'static str, left: impl ToString, right: impl ToString) -> Self {
        Error::Dimension {
            context,
            left: left.to_string(),
            right: right.to_string(),
        }
    }

    /// Attach the iteration index to an empty-intersection error.
    pub(crate) fn at_step(self, k: usize) -> Self {
        match self {
            Error::EmptyIntersection { row, col, .. } => Error::EmptyIntersection {
                row,
                col,
                step: Some(k),
            },
            other => other,
        }
    }
}
