use thiserror::Error;

use crate::instance::Violation;

/// Errors produced by the solvers, oracles and file readers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed instance text; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An instance that breaks its own invariants.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// An assignment that is not structurally valid for its instance.
    #[error("invalid assignment: {}", format_violations(.0))]
    InvalidAssignment(Vec<Violation>),

    /// A fractional assignment that breaks capacity or admissibility.
    #[error("invalid fractional assignment: {0}")]
    InvalidFractional(String),

    /// The algorithm does not apply to this kind of instance.
    #[error("unsupported instance: {0}")]
    Unsupported(String),

    /// A parameter outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The request exceeds a configured size cap or budget.
    #[error("refused: {0}")]
    Refused(String),

    /// An input that does not have the shape an operation's contract requires.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The linear program has no feasible point.
    #[error("linear program is infeasible")]
    Infeasible,

    /// The linear program's objective is unbounded.
    #[error("linear program is unbounded")]
    Unbounded,

    /// A guarantee the algorithm relies on did not hold; this is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
