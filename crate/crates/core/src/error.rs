use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch for {oracle}: expected a vector of length {expected}, got {got}")]
    DimensionMismatch {
        oracle: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{oracle} returned a non-finite value")]
    NonFiniteOutput { oracle: &'static str },

    #[error("matrix entries must be finite")]
    NonFiniteEntries,

    #[error("entry buffer of length {len} does not match a {rows}x{cols} matrix")]
    BadShape { len: usize, rows: usize, cols: usize },

    #[error("forward oracle maps {forward:?} but adjoint oracle maps {adjoint:?}")]
    OracleDimsDisagree {
        forward: (usize, usize),
        adjoint: (usize, usize),
    },

    #[error("no tangent sphere exists around a vector of dimension 1")]
    NoTangentSphere,

    #[error("both operator dimensions must be at least 2 (got {m}x{d})")]
    DimensionTooSmall { m: usize, d: usize },

    #[error("direction resampling exhausted after {retries} retries (degenerate step coefficients)")]
    ResampleExhausted { retries: usize },

    #[error("unknown trace field `{0}`")]
    UnknownField(String),

    #[error("trace field `{field}` is not recorded at iteration {iter}")]
    FieldNotRecorded { field: String, iter: usize },

    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid projector geometry: {0}")]
    InvalidGeometry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
