//! Error vocabulary shared by the model and engine modules.

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    // series
    #[error("series level at index {index} is not positive: {value}")]
    NonPositiveLevel { index: usize, value: f64 },
    #[error("series too short: {len} < {min}")]
    TooShort { len: usize, min: usize },

    // curves
    #[error("insufficient quotes for curve fit: {n_short} short-end, {n_long} long-end")]
    InsufficientQuotes { n_short: usize, n_long: usize },
    #[error("curve fit objective is not finite")]
    FitDiverged,
    #[error("negative tenor: t={t}, maturity={maturity}")]
    NegativeTenor { t: f64, maturity: f64 },
    #[error("maturity must be positive, got {0}")]
    NonPositiveMaturity(f64),

    // hw1f
    #[error("reversed times: s={s} > t={t}")]
    ReversedTimes { s: f64, t: f64 },
    #[error("time must be positive, got {0}")]
    NonPositiveTime(f64),

    // fx
    #[error("FX spot must be positive, got {0}")]
    NonPositiveSpot(f64),
    #[error("time step must be positive, got {0}")]
    NonPositiveStep(f64),

    // credit
    #[error("intensity path is empty")]
    EmptyPath,
    #[error("survival series increases at index {index}")]
    NonMonotoneSurvival { index: usize },
    #[error("recovery rate must lie in [0,1), got {0}")]
    InvalidRecovery(f64),

    // correlation
    #[error("correlation matrix is not positive semi-definite (row-3 radicand {radicand})")]
    NotPositiveSemiDefinite { radicand: f64 },
    #[error("degenerate Cholesky pivot: |rho12| = 1")]
    DegeneratePivot,
    #[error("correlation out of [-1,1]: {0}")]
    InvalidRho(f64),
    #[error("window {window} exceeds series length {len}")]
    WindowTooLarge { window: usize, len: usize },
    #[error("series has zero variance")]
    ZeroVariance,
    #[error("AR(1) fit is explosive or degenerate: slope {slope}")]
    ExplosiveFit { slope: f64 },
    #[error("correlation input saturated at index {index}")]
    SaturatedInput { index: usize },

    // ccs
    #[error("valuation date {t} is not on the payment grid")]
    OffGridDate { t: f64 },
    #[error("valuation date {t} is past maturity {maturity}")]
    MaturityPassed { t: f64, maturity: f64 },
    #[error("invalid contract schedule: start {start}, maturity {maturity}, interval {interval}")]
    BadSchedule { start: f64, maturity: f64, interval: f64 },

    // calibration
    #[error("swaption root bracket failed after {expansions} expansions")]
    RootBracketFailure { expansions: usize },
    #[error("market price {price} is outside the attainable range [{lo}, {hi}]")]
    PriceUnattainable { price: f64, lo: f64, hi: f64 },
    #[error("CIR log-likelihood is not finite")]
    LikelihoodNonFinite,
    #[error("intensity input at index {index} is not positive: {value}")]
    NonPositiveIntensityInput { index: usize, value: f64 },

    // engine
    #[error("non-finite state on path {path} at step {step}")]
    NonFiniteState { path: usize, step: usize },
    #[error("grid mismatch: contract has {contract} payment dates, paths have {paths}")]
    GridMismatch { contract: usize, paths: usize },
    #[error("statistics over an empty vector")]
    EmptyVector,

    // shared parameter guards
    #[error("invalid parameter {name}: {value}")]
    InvalidParam { name: &'static str, value: f64 },
}

impl Error {
    /// Stable machine-readable category name, used by the CLI's
    /// single-line error reporting.
    pub fn category(&self) -> &'static str {
        match self {
            Error::NonPositiveLevel { .. } => "NonPositiveLevel",
            Error::TooShort { .. } => "TooShort",
            Error::InsufficientQuotes { .. } => "InsufficientQuotes",
            Error::FitDiverged => "FitDiverged",
            Error::NegativeTenor { .. } => "NegativeTenor",
            Error::NonPositiveMaturity(_) => "NonPositiveMaturity",
            Error::ReversedTimes { .. } => "ReversedTimes",
            Error::NonPositiveTime(_) => "NonPositiveTime",
            Error::NonPositiveSpot(_) => "NonPositiveSpot",
            Error::NonPositiveStep(_) => "NonPositiveStep",
            Error::EmptyPath => "EmptyPath",
            Error::NonMonotoneSurvival { .. } => "NonMonotoneSurvival",
            Error::InvalidRecovery(_) => "InvalidRecovery",
            Error::NotPositiveSemiDefinite { .. } => "NotPositiveSemiDefinite",
            Error::DegeneratePivot => "DegeneratePivot",
            Error::InvalidRho(_) => "InvalidRho",
            Error::WindowTooLarge { .. } => "WindowTooLarge",
            Error::ZeroVariance => "ZeroVariance",
            Error::ExplosiveFit { .. } => "ExplosiveFit",
            Error::SaturatedInput { .. } => "SaturatedInput",
            Error::OffGridDate { .. } => "OffGridDate",
            Error::MaturityPassed { .. } => "MaturityPassed",
            Error::BadSchedule { .. } => "BadSchedule",
            Error::RootBracketFailure { .. } => "RootBracketFailure",
            Error::PriceUnattainable { .. } => "PriceUnattainable",
            Error::LikelihoodNonFinite => "LikelihoodNonFinite",
            Error::NonPositiveIntensityInput { .. } => "NonPositiveIntensityInput",
            Error::NonFiniteState { .. } => "NonFiniteState",
            Error::GridMismatch { .. } => "GridMismatch",
            Error::EmptyVector => "EmptyVector",
            Error::InvalidParam { .. } => "InvalidParam",
        }
    }
}
