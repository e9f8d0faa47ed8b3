//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("outcome column contains a value other than 0 or 1")]
    NonBinaryOutcome,
    #[error("all outcomes belong to a single class")]
    DegenerateOutcome,
    #[error("non-finite value in input")]
    NonFiniteValue,
    #[error("column `{0}` not found in input")]
    MissingColumn(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("first-stage likelihood appears unbounded (separated data)")]
    Separation,
    #[error("design matrix is rank deficient")]
    RankDeficient,
    #[error("first-stage optimizer failed to converge")]
    NoConvergence,
    #[error("one outcome class carries zero total weight")]
    AllZeroClassWeight,
    #[error("bootstrap weights must be nonnegative")]
    NegativeWeight,
    #[error("information matrix is singular")]
    SingularAMatrix,
    #[error("kernel bandwidth is degenerate: {0}")]
    BandwidthDegenerate(String),
    #[error("too few observations per class for kernel estimation")]
    TooFewPerClass,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("density ratio unavailable at a requested evaluation point")]
    RatioUnavailable,
    #[error("{0} of {1} bootstrap replicates failed to refit (limit is 5%)")]
    ExcessiveFailures(usize, usize),
    #[error("estimate lies on the boundary of [0, 1]; its variance is degenerate")]
    BoundaryEstimate,
    #[error("variance estimate unavailable")]
    VarianceUnavailable,
    #[error("difference process is degenerate; the two indices are statistically indistinguishable")]
    DegenerateDifference,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable machine-readable code, used in CLI error documents.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonBinaryOutcome => "NonBinaryOutcome",
            Error::DegenerateOutcome => "DegenerateOutcome",
            Error::NonFiniteValue => "NonFiniteValue",
            Error::MissingColumn(_) => "MissingColumn",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Separation => "Separation",
            Error::RankDeficient => "RankDeficient",
            Error::NoConvergence => "NoConvergence",
            Error::AllZeroClassWeight => "AllZeroClassWeight",
            Error::NegativeWeight => "NegativeWeight",
            Error::SingularAMatrix => "SingularAMatrix",
            Error::BandwidthDegenerate(_) => "BandwidthDegenerate",
            Error::TooFewPerClass => "TooFewPerClass",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::RatioUnavailable => "RatioUnavailable",
            Error::ExcessiveFailures(_, _) => "ExcessiveFailures",
            Error::BoundaryEstimate => "BoundaryEstimate",
            Error::VarianceUnavailable => "VarianceUnavailable",
            Error::DegenerateDifference => "DegenerateDifference",
            Error::Io(_) => "Io",
            Error::Csv(_) => "Csv",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
