use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed scalar literal {text:?}: {reason}")]
    Literal { text: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("group element has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("enveloping algebra is not confluent: {0} unresolved overlaps")]
    Untrusted(usize),
    #[error("rewriting exceeded the step budget of {0}")]
    StepBudget(usize),
    #[error("zero element has no symbol")]
    ZeroSymbol,
    #[error("lambda is not a coboundary witness for omega1 - omega2")]
    NotCohomologous,
    #[error("algebras are built over different Lie algebras")]
    AlgebraMismatch,
    #[error("module {0} is not a graded module for this twist")]
    ModuleMismatch(String),
    #[error("adjoint action leaves the truncation at degree {0}")]
    Closure(usize),
    #[error("coboundary squares to a nonzero map in degree {0}")]
    NonzeroDefect(usize),
    #[error("Hopf operations require omega = 0")]
    NonzeroTwist,
    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
