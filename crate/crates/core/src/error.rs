use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("nodes are not strictly increasing at index {index}: {prev} then {next}")]
    NonIncreasing { index: i64, prev: f64, next: f64 },

    #[error("window contains no nodes")]
    EmptyWindow,

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("no bounded enumeration n + δ_n exists over the requested window")]
    NoEnumeration,

    #[error("singular system: sigma_min {sigma_min:e} below threshold {threshold:e}")]
    SingularSystem { sigma_min: f64, threshold: f64 },

    #[error("quadrature grid too coarse: estimated relative error {0:e}")]
    GridTooCoarse(f64),

    #[error("series needs {needed} terms for a certified tail, got {given}")]
    TooFewTerms { needed: usize, given: usize },

    #[error("point lies on zero #{index} of the product")]
    OnZero { index: usize },

    #[error("points are not sorted by modulus (position {0})")]
    UnsortedInput(usize),

    #[error("sign-retrieval window of {0} nodes exceeds the brute-force limit of 16")]
    WindowTooLarge(usize),

    #[error("coefficients must be real")]
    ComplexInput,

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("invalid config: {0}")]
    ConfigInvalid(String),

    #[error("thresholds failed: {}", .0.join(", "))]
    ThresholdFailed(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
