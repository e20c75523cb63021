use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid needs a power-of-two point count >= 8 and a positive finite length (got n={n_points}, L={length})")]
    InvalidGrid { n_points: usize, length: f64 },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("operation needs a real-valued field")]
    NotReal,

    #[error("negative fractional order {0} is undefined on the zero mode")]
    NegativeOrderOnZeroMode(f64),

    #[error("shell index {index} outside [{min}, {max}]")]
    ShellOutOfRange { index: i32, min: i32, max: i32 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("field has nonzero mean {mean:e}; subtract it first (mean-zero reduction)")]
    NonZeroMean { mean: f64 },

    #[error("time series too short: need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("time sampling cannot resolve the dispersion: |theta(xi)| = {max_frequency:.3e} exceeds the temporal Nyquist {nyquist:.3e}")]
    UnresolvedTime { max_frequency: f64, nyquist: f64 },

    #[error("non-finite or blown-up state at t = {t}")]
    BlowUp { t: f64 },

    #[error("fixed-point iteration stalled after {iterations} sweeps (last increment {increment:e})")]
    NoConvergence { iterations: usize, increment: f64 },

    #[error("soliton does not decay enough on this box: tail/peak = {ratio:e}")]
    InsufficientDecay { ratio: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::BlowUp { .. } | Error::NoConvergence { .. } | Error::UnresolvedTime { .. } | Error::InsufficientDecay { .. })
    }
}
