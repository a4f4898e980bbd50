use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate generator: zero vector at index {0}")]
    DegenerateGenerator(usize),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("unsupported dimension {0} (supported: 1..=4)")]
    UnsupportedDimension(usize),

    #[error("radius {radius} too small: need at least {min}")]
    RadiusTooSmall { radius: f64, min: f64 },

    #[error("point {0:?} lies outside the region bounding box")]
    OutsideBoundingBox(Vec<f64>),

    #[error("endpoint cell {0:?} is not occupied")]
    UnoccupiedEndpoint(Vec<i64>),

    #[error("Klee hypothesis unavailable: region not flagged closed")]
    KleeHypothesisUnavailable,

    #[error("sample budget {got} too small: need at least {min}")]
    SampleBudgetTooSmall { got: usize, min: usize },

    #[error("empty fiber: value lies outside the local cone")]
    EmptyFiber,

    #[error("hop radius must be >= 1")]
    HopRadiusTooSmall,

    #[error("declared cones missing on {0} vertices")]
    MissingCones(usize),

    #[error("fiber-component oracle missing: CCF undecidable for this scene")]
    MissingFiberOracle,

    #[error("unknown scene `{name}`; available: {available}")]
    UnknownScene { name: String, available: String },

    #[error("sampler mismatch: acceptance rate {rate:.4} below 1%")]
    SamplerMismatch { rate: f64 },

    #[error("sample graph disconnected while the scene domain is connected; increase samples")]
    DisconnectedSampleGraph,

    #[error("spectrum not sorted decreasingly: {0:?}")]
    NotSortedDecreasing(Vec<f64>),

    #[error("matrix is not Hermitian: asymmetry {0:.3e} exceeds 1e-12")]
    NonHermitian(f64),

    #[error("infinite quotient distance: classes lie in different components")]
    InfiniteDistance,

    #[error("value is not a finite number: {0}")]
    NonFiniteValue(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("invalid scene configuration: {0}")]
    InvalidScene(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
