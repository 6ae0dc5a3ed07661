use thiserror::Error;

/// Errors produced by the analysis and generation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("finest scale {a_min} is below the floor 2*dt = {floor}")]
    ScaleTooFine { a_min: f64, floor: f64 },

    #[error("invalid scale grid: {0}")]
    InvalidScaleGrid(String),

    #[error("invalid wavelet: {0}")]
    InvalidWavelet(String),

    #[error("invalid IFS model: {0}")]
    InvalidModel(String),

    #[error("hurst exponent {0} is outside (0, 1)")]
    InvalidHurst(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("transform has {available} scales, {required} required")]
    TooFewScales { required: usize, available: usize },

    #[error("maxima line has {usable} usable scales, at least 3 required")]
    LineTooShort { usable: usize },

    #[error("no samples outside the cone of influence at scale {scale}")]
    NoValidSamples { scale: f64 },

    #[error("degenerate power-law fit: {0}")]
    DegenerateFit(String),

    #[error("value {0} is outside [0, 1]")]
    OutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
