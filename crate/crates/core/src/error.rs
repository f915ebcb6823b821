use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid multiplier: {0}")]
    InvalidMultiplier(String),

    #[error("singular symbol: {0}")]
    Singular(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("pair (q, r) = ({q}, {r}) is not admissible")]
    NotAdmissible { q: String, r: String },

    #[error("empty input: {0}")]
    Empty(String),

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "overflow guard tripped at t = {time}: sup|u| = {sup} exceeds {guard} (under-resolved run)"
    )]
    Overflow { time: f64, sup: f64, guard: f64 },

    #[error("frequency tuple is not on the hyperplane: |sum| = {0:e}")]
    OffHyperplane(f64),

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("time origin mismatch: trajectory starts at {first}, requested {requested}")]
    TimeOrigin { first: f64, requested: f64 },

    #[error("sampler could not satisfy constraints: {0}")]
    Sampler(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("malformed binary data: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
