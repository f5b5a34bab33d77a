use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for graph with {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("function belongs to a different graph (expected {expected:016x}, found {found:016x})")]
    DomainMismatch { expected: u64, found: u64 },

    #[error("invalid graph: {0}")]
    Structure(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("invalid vertex subset: {0}")]
    Subset(String),

    #[error("initial data not supported on the Dirichlet set: {0}")]
    Support(String),

    #[error("time grid does not cover the requested window: {0}")]
    Coverage(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("no finite perturbation bound at t = {time}, vertex {vertex}: residual {residual:e} with |u| + |grad u| = 0")]
    InfeasibleBound { time: f64, vertex: usize, residual: f64 },

    #[error("vacuous input: {0}")]
    VacuousInput(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
