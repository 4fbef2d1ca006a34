use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid policy: {0}")]
    InvalidPolicy(String),
    #[error("size cap exceeded: {requested} > {cap}")]
    SizeCap { requested: u128, cap: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0} does not hold")]
    ConditionFailed(&'static str),
    #[error("no tiling: {0}")]
    NoTiling(String),
    #[error("decomposition structure violated: {0}")]
    Decomposition(String),
    #[error("set is not gcd-normalized (gcd = {0}); divide by the gcd first")]
    NotNormalized(u64),
    #[error("not a bi-zero set: pair ({left}, {right}) has |m| = {modulus:.3e}")]
    NotBiZero {
        left: String,
        right: String,
        modulus: f64,
    },
    #[error("random search exhausted its retry budget of {0}")]
    RetryBudget(usize),
    #[error("hypothesis cannot be verified: {0}")]
    Unverifiable(String),
    #[error("overlapping intervals: {0}")]
    OverlappingIntervals(String),
}
