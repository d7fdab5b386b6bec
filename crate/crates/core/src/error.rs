use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: matrices must be at least 1x1")]
    InvalidDimension(usize),

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: max |A - A*| = {deviation:e} exceeds {tolerance:e}")]
    NonHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not unitary: max |A A* - I| = {deviation:e} exceeds {tolerance:e}")]
    NonUnitary { deviation: f64, tolerance: f64 },

    #[error("eigensolver did not converge for {dim}x{dim} matrix (hash {hash:016x}) within {budget} iterations")]
    NoConvergence {
        dim: usize,
        hash: u64,
        budget: usize,
    },

    #[error("{p}/{q} is not a reduced fraction")]
    NotCoprime { p: u64, q: u64 },

    #[error("invalid frequency: {0}")]
    InvalidAlpha(String),

    #[error("invalid operator parameters: {0}")]
    InvalidParams(String),

    #[error("at grid point x = {x}, theta = {theta}: {source}")]
    AtGridPoint {
        x: f64,
        theta: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("operation requires a {expected} spectrum")]
    WrongKind { expected: &'static str },

    #[error("spectrum kinds differ")]
    KindMismatch,

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("power-law samples must be positive (got q = {q}, w = {w})")]
    NonPositiveSample { q: u64, w: f64 },

    #[error("power-law fit needs at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("zoom center {0} lies outside (-pi, pi]")]
    CenterOutOfRange(f64),

    #[error("alpha1, alpha2 and their sum and difference must all be non-integers")]
    DegenerateAlphas,

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed spectrum file: {reason}")]
    Malformed { path: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub(crate) fn at_grid_point(self, x: f64, theta: f64) -> Self {
        Error::AtGridPoint {
            x,
            theta,
            source: Box::new(self),
        }
    }
}
