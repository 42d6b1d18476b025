use thiserror::Error;

/// Errors raised by the surface, homology, norm and construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("edge label `{label}` occurs {count} times (expected exactly 2)")]
    DuplicateLabelCount { label: String, count: usize },
    #[error("the complex is not connected")]
    Disconnected,
    #[error("edge `{label}` has non-positive weight {weight}")]
    NonPositiveWeight { label: String, weight: String },
    #[error("unknown edge label `{0}`")]
    UnknownLabel(String),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("chain is not a closed walk")]
    NotAClosedWalk,
    #[error("curve is not simple on the surface")]
    NotSimple,
    #[error("surface is not orientable")]
    NotOrientable,
    #[error("base surface is orientable; the orientation cover is only defined for non-orientable surfaces")]
    BaseOrientable,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("first Betti number is zero; the stable norm ball is undefined")]
    TrivialHomology,
    #[error("first Betti number {0} exceeds the supported maximum of 6")]
    DimensionTooLarge(usize),
    #[error("circuit enumeration exceeded the cap of {0} circuits")]
    CircuitBudgetExceeded(usize),
    #[error("exhaustive search exceeded its budget ({0})")]
    SearchBudgetExceeded(String),
    #[error("class has norm {0}, not 1")]
    NotOnSphere(String),
    #[error("invalid prescription: {0}")]
    InvalidPrescription(String),
    #[error("outside-penalty escalation did not certify after {0} rounds")]
    NoSpanProgress(usize),
    #[error("linear program is {0}")]
    LpFailed(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
