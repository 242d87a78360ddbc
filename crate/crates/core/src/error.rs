use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong inside the engine.
///
/// `NotApplicable` and `NotCovered` are ordinary outcomes of a subbundle
/// count rather than bugs; `NonIntegralResult`, `NotRational` and
/// `CrossCheckFailed` indicate an internal inconsistency.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic value is not rational")]
    NotRational,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("pfaffian of odd dimension {0}")]
    OddDimension(usize),
    #[error("negative curve-class degree d = {0}")]
    NegativeDegree(i64),
    #[error("formula result is not a nonnegative integer: {0}")]
    NonIntegralResult(String),
    #[error("unsupported rank: {0}")]
    UnsupportedRank(i64),
    #[error("genus {0} is too small for this operation")]
    GenusTooSmall(i64),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("not covered (e0 = {e0}): {diagnostic}")]
    NotCovered { e0: i64, diagnostic: String },
    #[error("odd-rank counts need an even line-bundle degree, got {0}")]
    OddEllUnsupported(i64),
    #[error("subsheaf degree {0} must be even and nonpositive")]
    OddDegreeUnsupported(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotRational => "NotRational",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::NotSkewSymmetric => "NotSkewSymmetric",
            Error::OddDimension(_) => "OddDimension",
            Error::NegativeDegree(_) => "NegativeDegree",
            Error::NonIntegralResult(_) => "NonIntegralResult",
            Error::UnsupportedRank(_) => "UnsupportedRank",
            Error::GenusTooSmall(_) => "GenusTooSmall",
            Error::NotApplicable(_) => "NotApplicable",
            Error::NotCovered { .. } => "NotCovered",
            Error::OddEllUnsupported(_) => "OddEllUnsupported",
            Error::OddDegreeUnsupported(_) => "OddDegreeUnsupported",
            Error::Parse(_) => "Parse",
            Error::CrossCheckFailed(_) => "CrossCheckFailed",
        }
    }
}
