use thiserror::Error;

/// Errors raised by samplers, analyzers and executors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("population must be ≥ 2 (got {0})")]
    InvalidPopulation(usize),

    #[error("matching size k must lie in [1, {max}] (got {k})")]
    InvalidK { k: usize, max: usize },

    #[error("invalid round: {0}")]
    InvalidRound(String),

    #[error("oracle input too large: T = {len} exceeds {limit}")]
    OracleTooLarge { len: usize, limit: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("scheduler invariant violated: agent {agent} appears twice in step {step}")]
    SchedulerInvariant { step: usize, agent: u32 },

    #[error("unknown {kind} `{name}`")]
    CatalogMiss { kind: &'static str, name: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
