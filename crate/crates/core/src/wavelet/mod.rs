//! Mother wavelets, the continuous wavelet transform, scalograms and
//! modulus maxima.

mod maxima;
mod mother;
mod scales;
mod scalogram;
mod transform;

pub use maxima::{modulus_maxima, MaximaLine, MaximaPoint, MaximaSet};
pub use mother::{
    MotherWavelet, WaveletKind, GAUSSIAN_SUPPORT_RADIUS, MORLET_DEFAULT_OMEGA0, MORLET_MIN_OMEGA0,
};
pub use scales::{ScaleGrid, DEFAULT_VOICES};
pub use scalogram::{scalogram, Scalogram};
pub use transform::{cwt_direct, cwt_fft, CwtMatrix};

/// Closed-form value of `w` at `t`.
pub fn eval_wavelet(w: &MotherWavelet, t: f64) -> num_complex::Complex64 {
    w.eval(t)
}
