use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("{what} is not a finite number")]
    NonFinite { what: &'static str },

    /// The orbit came within `DEGENERATE_EPSILON` of a fixed point of the map.
    #[error("logistic orbit degenerated to {value} after {step} steps (mu = {mu})")]
    DegenerateOrbit { value: f64, mu: f64, step: u64 },

    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("malformed key: {0}")]
    MalformedKey(String),

    #[error("invalid image dimensions {width}x{height} for {len} bytes")]
    InvalidDimensions {
        width: usize,
        height: usize,
        len: usize,
    },

    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("position ({row}, {col}) outside {width}x{height} image")]
    PositionOutOfBounds {
        row: usize,
        col: usize,
        width: usize,
        height: usize,
    },

    #[error("statistic undefined for an empty image")]
    EmptyImage,

    #[error("image has no adjacent pair in the {0} direction")]
    ImageTooSmall(&'static str),

    #[error("sequence has zero variance; correlation undefined")]
    ZeroVariance,

    #[error(transparent)]
    Pgm(#[from] PgmError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgmError {
    #[error("not a binary PGM file (expected magic P5)")]
    BadMagic,
    #[error("bad PGM header: {0}")]
    BadHeader(String),
    #[error("PGM data truncated: expected {expected} bytes, found {actual}")]
    TruncatedData { expected: usize, actual: usize },
    #[error("unsupported PGM maxval {0} (only 255 is supported)")]
    UnsupportedMaxval(u32),
}
