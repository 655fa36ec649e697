use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The session's query budget ran out. Testers surface this as an
    /// `Inconclusive` decision, the CLI as exit code 2.
    #[error("query budget of {budget} exhausted (bb={bb}, rex={rex})")]
    BudgetExhausted { budget: u64, bb: u64, rex: u64 },

    /// A proper learner could not produce a hypothesis inside its class.
    #[error("no hypothesis in class: {0}")]
    NotInClass(String),

    /// The projection front end removed more variables than the junta
    /// arity it was promised.
    #[error("more than {cap} relevant variables found")]
    TooManyRelevant { cap: usize },

    /// An exact enumeration (distance, interpolation, truth-table DP) was
    /// asked to run past its configured cap.
    #[error("exact enumeration over {needed} variables exceeds cap {cap}")]
    EnumerationCap { needed: usize, cap: usize },

    #[error("this oracle does not support {0}")]
    Unsupported(&'static str),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
