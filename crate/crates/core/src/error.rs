use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NonHermitianInput(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter {value} outside family range [{low}, {high}]")]
    OutOfFamilyRange { value: f64, low: f64, high: f64 },

    #[error("reference state is singular (p_bar = 1 has no inverse square root)")]
    SingularReference,

    #[error("unphysical covariance: det = {0:.6e} below the vacuum bound 1/4")]
    UnphysicalCovariance(f64),

    #[error("Fock truncation {truncation} too small: trace deficit {deficit:.3e} exceeds tolerance")]
    TruncationTooSmall { truncation: usize, deficit: f64 },

    #[error("no bracket found: quantity never crossed the target before t = {0}")]
    NoBracket(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TruncationTooSmall { .. } | Error::NoBracket(_) | Error::Io(_) | Error::CheckFailed(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
