use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Half-width (unit scale) beyond which the Gaussian-envelope wavelets are
/// treated as zero. Amplitude there is below 1e-12.
pub const GAUSSIAN_SUPPORT_RADIUS: f64 = 8.0;

/// Smallest Morlet center frequency accepted.
pub const MORLET_MIN_OMEGA0: f64 = 5.0;

/// Default Morlet center frequency.
pub const MORLET_DEFAULT_OMEGA0: f64 = 6.0;

/// Family of the analyzing wavelet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveletKind {
    /// Negative normalized second derivative of a Gaussian (Ricker).
    MexicanHat,
    /// Admissibility-corrected complex Morlet with center frequency `omega0`.
    Morlet { omega0: f64 },
    /// Haar step wavelet supported on [0, 1).
    Haar,
}

/// A mother wavelet with closed forms in time and frequency, normalized to
/// unit L² energy.
///
/// The Fourier convention is `ψ̂(ω) = ∫ ψ(t) e^{-iωt} dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotherWavelet {
    kind: WaveletKind,
    // Morlet only: e^{-ω0²/2} offset and normalization constant.
    kappa: f64,
    norm: f64,
}

impl MotherWavelet {
    pub fn mexican_hat() -> Self {
        Self {
            kind: WaveletKind::MexicanHat,
            kappa: 0.0,
            norm: 2.0 / (3.0_f64.sqrt() * PI.powf(0.25)),
        }
    }

    pub fn haar() -> Self {
        Self {
            kind: WaveletKind::Haar,
            kappa: 0.0,
            norm: 1.0,
        }
    }

    /// Morlet wavelet with the zero-mean correction term, so admissibility
    /// holds exactly for every `omega0`.
    pub fn morlet(omega0: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 >= MORLET_MIN_OMEGA0) {
            return Err(Error::InvalidWavelet(format!(
                "Morlet center frequency {omega0} must be >= {MORLET_MIN_OMEGA0}"
            )));
        }
        let kappa = (-0.5 * omega0 * omega0).exp();
        let energy = 1.0 + (-omega0 * omega0).exp() - 2.0 * (-0.75 * omega0 * omega0).exp();
        Ok(Self {
            kind: WaveletKind::Morlet { omega0 },
            kappa,
            norm: PI.powf(-0.25) / energy.sqrt(),
        })
    }

    pub fn from_kind(kind: WaveletKind) -> Result<Self> {
        match kind {
            WaveletKind::MexicanHat => Ok(Self::mexican_hat()),
            WaveletKind::Haar => Ok(Self::haar()),
            WaveletKind::Morlet { omega0 } => Self::morlet(omega0),
        }
    }

    pub fn kind(&self) -> WaveletKind {
        self.kind
    }

    /// Short lowercase identifier, used in reports.
    pub fn name(&self) -> &'static str {
        match self.kind {
            WaveletKind::MexicanHat => "mexican-hat",
            WaveletKind::Morlet { .. } => "morlet",
            WaveletKind::Haar => "haar",
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self.kind, WaveletKind::Morlet { .. })
    }

    /// Interval (unit scale) outside which the wavelet is treated as zero.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            WaveletKind::MexicanHat | WaveletKind::Morlet { .. } => {
                (-GAUSSIAN_SUPPORT_RADIUS, GAUSSIAN_SUPPORT_RADIUS)
            }
            WaveletKind::Haar => (0.0, 1.0),
        }
    }

    /// Largest |t| in the support; sets the cone of influence.
    pub fn support_radius(&self) -> f64 {
        let (lo, hi) = self.support();
        lo.abs().max(hi.abs())
    }

    /// ψ(t) from the closed form.
    pub fn eval(&self, t: f64) -> Complex64 {
        match self.kind {
            WaveletKind::MexicanHat => {
                let t2 = t * t;
                Complex64::new(self.norm * (1.0 - t2) * (-0.5 * t2).exp(), 0.0)
            }
            WaveletKind::Morlet { omega0 } => {
                let envelope = self.norm * (-0.5 * t * t).exp();
                let (s, c) = (omega0 * t).sin_cos();
                Complex64::new(envelope * (c - self.kappa), envelope * s)
            }
            WaveletKind::Haar => {
                let v = if (0.0..0.5).contains(&t) {
                    1.0
                } else if (0.5..1.0).contains(&t) {
                    -1.0
                } else {
                    0.0
                };
                Complex64::new(v, 0.0)
            }
        }
    }

    /// ψ̂(ω) from the closed form.
    pub fn fourier(&self, omega: f64) -> Complex64 {
        let root_two_pi = (2.0 * PI).sqrt();
        match self.kind {
            WaveletKind::MexicanHat => {
                let w2 = omega * omega;
                Complex64::new(self.norm * root_two_pi * w2 * (-0.5 * w2).exp(), 0.0)
            }
            WaveletKind::Morlet { omega0 } => {
                let shifted = omega - omega0;
                let v = self.norm
                    * root_two_pi
                    * ((-0.5 * shifted * shifted).exp()
                        - self.kappa * (-0.5 * omega * omega).exp());
                Complex64::new(v, 0.0)
            }
            WaveletKind::Haar => {
                if omega == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                // (1 - e^{-iω/2})² / (iω)
                let half = Complex64::new(0.0, -0.5 * omega).exp();
                let one_minus = Complex64::new(1.0, 0.0) - half;
                one_minus * one_minus / Complex64::new(0.0, omega)
            }
        }
    }
}

impl Default for MotherWavelet {
    fn default() -> Self {
        Self::mexican_hat()
    }
}
