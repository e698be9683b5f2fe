use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// `Parse` is the only variant that reports malformed *input text*; every
/// other variant is a domain refusal (a precondition or range violation).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("sequence is not nonincreasing at position {0}")]
    NotNonincreasing(usize),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("degree {degree} exceeds n - 1 = {max}")]
    DegreeTooLarge { degree: u32, max: usize },

    #[error("laying off produced a negative term")]
    NegativeResidual,

    #[error("sequence is not graphical")]
    NotGraphical,

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("2-switch rejected: {0}")]
    SwitchRejected(SwitchFault),

    #[error("pattern has {pattern} vertices but host has only {host}")]
    PatternTooLarge { pattern: usize, host: usize },

    #[error("search limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Reason codes for a rejected 2-switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchFault {
    MissingEdge,
    RepeatedVertex,
    TargetEdgeExists,
}

impl std::fmt::Display for SwitchFault {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SwitchFault::MissingEdge => "a switched edge is not in the graph",
            SwitchFault::RepeatedVertex => "endpoints are not four distinct vertices",
            SwitchFault::TargetEdgeExists => "a replacement edge already exists",
        };
        f.write_str(s)
    }
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
