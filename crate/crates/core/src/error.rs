use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A - A^dagger| = {deviation:e}")]
    NonHermitianInput { deviation: f64 },

    #[error("generator is not skew-Hermitian: max |G + G^dagger| = {deviation:e}")]
    NotSkewHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {min_eigenvalue:e} below -{clip:e}")]
    NotPsd { min_eigenvalue: f64, clip: f64 },

    #[error("Hermitian eigensolver did not converge on a {dim}x{dim} matrix")]
    ConvergenceFailure { dim: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("weights must be nonnegative and sum to 1 (sum = {sum})")]
    WeightNotNormalized { sum: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotUnit { trace: f64 },

    #[error("ladder power {power} does not fit in truncation dimension {dim}")]
    PowerExceedsTruncation { power: usize, dim: usize },

    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochOutOfBall { norm: f64 },

    #[error("thermal tail mass {tail:e} beyond the cutoff exceeds 1e-12; enable renormalization or raise the dimension")]
    TailTooHeavy { tail: f64 },

    #[error("Fock level {level} out of range for truncation dimension {dim}")]
    LevelOutOfRange { level: usize, dim: usize },

    #[error("superposition levels must differ (both are {0})")]
    EqualLevels(usize),

    #[error("parameter out of domain: {0}")]
    ParamOutOfDomain(String),

    #[error("series did not reach relative tolerance after {terms} terms")]
    SeriesNotConverged { terms: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("report invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for malformed input as opposed to well-formed input outside a domain.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
