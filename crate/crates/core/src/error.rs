use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid degree distribution: {0}")]
    InvalidDistribution(String),

    #[error("degenerate distribution: all mass at degree 0")]
    DegenerateDistribution,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("fixed-point iteration did not converge after {iterations} iterations (last delta {last_delta:e})")]
    NonConvergence { iterations: u64, last_delta: f64 },

    #[error("degree sum is odd; a perfect matching of half-edges requires an even sum")]
    OddDegreeSum,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rejection sampling exhausted after {attempts} attempts without a simple graph")]
    RejectionExhausted { attempts: u32 },

    #[error("component has no 2-core (acyclic)")]
    NoTwoCore,

    #[error("cycle length {requested} exceeds the enumeration cap {cap}")]
    CycleLengthCap { requested: usize, cap: usize },

    #[error("experiment spec error: {0}")]
    Spec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
