//! Wavelet analysis of singular and self-affine signals.
//!
//! The crate covers the continuous wavelet transform and its scalogram,
//! detection of jumps and power-law cusps from modulus-maxima lines, seeded
//! generators for fractal test signals, and Hurst exponent estimation from
//! the scale dependence of the wavelet auto-covariance.

pub mod error;
pub mod fit;
pub mod selfsim;
pub mod series;
pub mod signal_gen;
pub mod singularity;
pub mod wavelet;

pub use error::{Error, Result};
pub use series::TimeSeries;
