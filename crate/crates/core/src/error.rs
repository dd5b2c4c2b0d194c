use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |H - H^dag| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("gate {index} is not unitary: max |U^dag U - I| = {deviation:e}")]
    NotUnitary { index: usize, deviation: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{entries} entries cannot fill a {rows}x{cols} matrix")]
    BadShape { rows: usize, cols: usize, entries: usize },

    #[error("a matrix needs at least one row")]
    EmptyMatrix,

    #[error("gate count k = {k} is not allowed here ({reason})")]
    InvalidGateCount { k: usize, reason: &'static str },

    #[error("site {site} is outside the clock chain 0..={k}")]
    SiteOutOfRange { site: usize, k: usize },

    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange { name: &'static str, value: f64, expected: &'static str },

    #[error("invalid time grid: {0}")]
    InvalidGrid(&'static str),

    #[error("dense dimension {dim} exceeds the cap of {cap}")]
    CapacityExceeded { dim: usize, cap: usize },

    #[error("input state norm is {norm}, expected 1")]
    UnnormalizedState { norm: f64 },

    #[error("need at least {need} points, got {got}")]
    TooFewPoints { got: usize, need: usize },

    #[error("value at index {index} is not strictly positive")]
    NonPositive { index: usize },

    #[error("x values must span at least {decades} decade(s)")]
    InsufficientSpan { decades: f64 },

    #[error("no {what} found for k = {k} in t ∈ [{lo}, {hi}]")]
    SearchFailure { k: usize, what: &'static str, lo: f64, hi: f64 },

    #[error("peak report for k = {k} violates an invariant: {what}")]
    PeakInvariant { k: usize, what: &'static str },

    #[error("gate file field `{field}`: {problem}")]
    GateSchema { field: String, problem: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
