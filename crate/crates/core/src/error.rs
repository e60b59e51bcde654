use thiserror::Error;

/// Errors produced by the analysis and sampling routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid degree sequence: {0}")]
    Validation(String),

    #[error("degree sequence is not realizable by a simple graph")]
    InfeasibleSequence,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invalid value: {0}")]
    Value(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("size {requested} exceeds the vertex budget {budget}")]
    Overflow { requested: f64, budget: u64 },

    #[error("bisection bracket [{lo}, {hi}] does not straddle a sign change")]
    ConvergenceFailure { lo: f64, hi: f64 },

    #[error("no simple pairing found after {attempts} attempts; use the switching sampler")]
    RejectionBudgetExceeded { attempts: u64 },

    #[error("rejection sampling unsuitable: sum d^2 / sum d = {ratio:.3} exceeds {bound}; use the switching sampler")]
    RejectionUnsuitable { ratio: f64, bound: f64 },

    #[error("edge {0}-{1} is not present or the edge pair is invalid")]
    EdgeNotPresent(u32, u32),

    #[error("graph on {n} vertices exceeds the brute-force cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("vertex {0} is isolated")]
    IsolatedVertex(u32),

    #[error("inconsistent kernel paths: {0}")]
    InconsistentPaths(String),

    #[error("initial exploration set is empty")]
    EmptyS0,

    #[error("scenario cannot be realized: {0}")]
    InfeasibleScenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
