use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("{what} = {value} lies outside the domain")]
    OutsideDomain { what: &'static str, value: f64 },

    #[error("invalid polynomial degree {0}")]
    InvalidDegree(i64),

    #[error("Pochhammer denominator vanishes at term {k}")]
    PoleInDenominator { k: usize },

    #[error("state n={n}, L={l} is not admissible at Lambda={lambda}")]
    NotAdmissible { n: usize, l: usize, lambda: f64 },

    #[error("no bound states for L={l} at Lambda={lambda}")]
    NoBoundStates { l: usize, lambda: f64 },

    #[error(
        "|Lambda| = {lambda} is below the closed-form switch; use the harmonic-oscillator branch"
    )]
    LambdaTooSmall { lambda: f64 },

    #[error("series did not converge after {terms} terms (tail estimate {tail})")]
    SeriesNotConverged { terms: usize, tail: f64 },

    #[error("quadrature error estimate {estimate} exceeds tolerance {tolerance}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },

    #[error("bracket [{lo}, {hi}] does not straddle a sign change")]
    BracketInvalid { lo: f64, hi: f64 },

    #[error("step size underflow at y = {at} (h = {step})")]
    StiffnessFailure { at: f64, step: f64 },

    #[error("trajectory left the domain lambda*x^2 + 1 > 0 at t = {t}")]
    DomainExit { t: f64 },

    #[error("radial coordinate collapsed to zero at t = {t}")]
    RadialCollapse { t: f64 },

    #[error("non-finite value in output")]
    NonFiniteValue,
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPositiveParameter { .. } => "NonPositiveParameter",
            Error::OutsideDomain { .. } => "OutsideDomain",
            Error::InvalidDegree(_) => "InvalidDegree",
            Error::PoleInDenominator { .. } => "PoleInDenominator",
            Error::NotAdmissible { .. } => "NotAdmissible",
            Error::NoBoundStates { .. } => "NoBoundStates",
            Error::LambdaTooSmall { .. } => "LambdaTooSmall",
            Error::SeriesNotConverged { .. } => "SeriesNotConverged",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::BracketInvalid { .. } => "BracketInvalid",
            Error::StiffnessFailure { .. } => "StiffnessFailure",
            Error::DomainExit { .. } => "DomainExit",
            Error::RadialCollapse { .. } => "RadialCollapse",
            Error::NonFiniteValue => "NonFiniteValue",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
