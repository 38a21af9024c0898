use thiserror::Error;

/// Errors produced by the dimer library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DimerError {
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFiniteParameter { name: &'static str, value: f64 },

    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("polar angle theta = {0} lies outside [0, pi]")]
    ThetaOutOfRange(f64),

    #[error("reduced inverse temperature x = {0} must be non-negative")]
    NegativeInverseTemperature(f64),

    #[error("operation is defined for the longitudinal geometry only (theta = 0), got theta = {0}")]
    RequiresLongitudinalAxis(f64),

    #[error("operation requires a finite temperature (x < infinity); use the analytic T = 0 branch")]
    ZeroTemperature,

    #[error("invalid X state: {0}")]
    InvalidXState(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("logarithm argument {0} is negative beyond the domain tolerance")]
    LogDomain(f64),

    #[error("geometric discord is defined only at zero field, got eta = {0}")]
    NonzeroField(f64),

    #[error("no sign change found for the discord extremum condition in x in ({lo}, {hi})")]
    NoBracket { lo: f64, hi: f64 },

    #[error("material table line {line}: {reason}")]
    MaterialTable { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, DimerError>;
