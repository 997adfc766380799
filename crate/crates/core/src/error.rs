use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the exit code the command-line front end maps
/// them to (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // validation
    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NonSymmetric(f64),
    #[error("matrix is not positive definite (smallest eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),
    #[error("repeated eigenvalue: λ_{index} and λ_{next} have relative gap {gap:.3e}", next = index + 1)]
    RepeatedEigenvalue { index: usize, gap: f64 },
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subset has {found} indices, {expected} required")]
    SubsetSizeMismatch { expected: usize, found: usize },
    #[error("invalid index subset: {0}")]
    InvalidSubset(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("inadmissible signature: {0}")]
    InadmissibleSignature(String),
    #[error("convex weight {index} is not positive ({value})")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("vector has no nonzero entry")]
    ZeroVector,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),

    // numerical
    #[error("support below direction count: {support} nonzero entries, {required} required")]
    InsufficientSupport { support: usize, required: usize },
    #[error("singular system: {0}")]
    SingularSystem(String),
    #[error("corner routes disagree: max deviation {deviation:.3e} exceeds {tolerance:.1e}")]
    CrossCheckFailure { deviation: f64, tolerance: f64 },
    #[error("vector is not in the cone: constraint residual {0:.3e}")]
    NotInCone(f64),
    #[error("support reduction stalled at {0} nonzero entries")]
    StallDetected(usize),
    #[error("analytic Jacobian deviates from finite differences by {deviation:.3e} (tolerance {tolerance:.1e})")]
    FdMismatch { deviation: f64, tolerance: f64 },

    // enumeration caps
    #[error("enumeration of C({m},{n}) subsets exceeds cap {cap}")]
    EnumerationCapExceeded { m: usize, n: usize, cap: u64 },
    #[error("brute-force enumeration of {count} items exceeds cap {cap}")]
    CapExceeded { count: u128, cap: u64 },

    // extremal-ray conjecture evidence
    #[error("null vector for support {support} is not sign-definite")]
    PositivityFailure { support: String },
}

impl Error {
    /// Process exit code: 2 validation, 3 numerical, 4 enumeration cap,
    /// 5 extremal-ray positivity failure.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            NonSymmetric(_)
            | NotPositiveDefinite(_)
            | RepeatedEigenvalue { .. }
            | InvalidSpectrum(_)
            | InvalidDimension(_)
            | DimensionMismatch { .. }
            | SubsetSizeMismatch { .. }
            | InvalidSubset(_)
            | InvalidConfig(_)
            | InadmissibleSignature(_)
            | NonPositiveWeight { .. }
            | ZeroVector
            | Parse(_)
            | Io(_) => 2,
            InsufficientSupport { .. }
            | SingularSystem(_)
            | CrossCheckFailure { .. }
            | NotInCone(_)
            | StallDetected(_)
            | FdMismatch { .. } => 3,
            EnumerationCapExceeded { .. } | CapExceeded { .. } => 4,
            PositivityFailure { .. } => 5,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
