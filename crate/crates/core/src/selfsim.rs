//! Hurst exponent estimation from the wavelet auto-covariance.
//!
//! For a self-affine process the per-scale energy `R(a) = E|W(·, a)|²`
//! follows `C·a^β` with `β = 2H + 1 = 5 − 2D`. The expectation is replaced
//! by a time average over coefficients clear of the boundary, and `β` is the
//! ordinary least-squares slope in log-log coordinates.

use crate::error::{Error, Result};
use crate::fit::ols;
use crate::series::TimeSeries;
use crate::wavelet::{cwt_fft, CwtMatrix, MotherWavelet, ScaleGrid, WaveletKind};

/// Minimum grid size for the auto-covariance.
pub const MIN_COVARIANCE_SCALES: usize = 8;

/// Minimum number of positive entries in a power-law fit.
pub const MIN_FIT_ENTRIES: usize = 4;

/// Half-width of the band around H = 1/2 classified as Brownian.
pub const BROWNIAN_BAND: f64 = 0.05;

/// Warning attached to estimates with β outside (1, 3).
pub const OUT_OF_BAND_WARNING: &str = "beta outside self-affine band (1,3)";

// Relative slack for scale-range membership.
const RANGE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleRange {
    /// The grid minus one octave at each end.
    Automatic,
    Fixed {
        a_min: f64,
        a_max: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimationConfig {
    pub scale_range: ScaleRange,
    pub exclude_cone: bool,
}

impl Default for EstimationConfig {
    fn default() -> Self {
        Self {
            scale_range: ScaleRange::Automatic,
            exclude_cone: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceEntry {
    pub scale: f64,
    pub value: f64,
    pub samples: usize,
}

/// Per-scale mean squared wavelet modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletAutoCovariance {
    entries: Vec<CovarianceEntry>,
    wavelet: WaveletKind,
    signal_len: usize,
}

impl WaveletAutoCovariance {
    /// Builds a covariance table from given values, e.g. a model curve.
    /// Scales must be strictly increasing and positive, values finite and
    /// non-negative, sample counts positive.
    pub fn from_entries(
        entries: Vec<CovarianceEntry>,
        wavelet: WaveletKind,
        signal_len: usize,
    ) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("no covariance entries".into()));
        }
        for (k, e) in entries.iter().enumerate() {
            if !(e.scale > 0.0 && e.scale.is_finite()) || (k > 0 && e.scale <= entries[k - 1].scale)
            {
                return Err(Error::InvalidParameter(
                    "scales must be positive and strictly increasing".into(),
                ));
            }
            if !(e.value >= 0.0 && e.value.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "covariance {} at scale {} is invalid",
                    e.value, e.scale
                )));
            }
            if e.samples == 0 {
                return Err(Error::InvalidParameter(format!(
                    "no samples at scale {}",
                    e.scale
                )));
            }
        }
        Ok(Self {
            entries,
            wavelet,
            signal_len,
        })
    }

    pub fn entries(&self) -> &[CovarianceEntry] {
        &self.entries
    }

    pub fn wavelet(&self) -> WaveletKind {
        self.wavelet
    }

    pub fn signal_len(&self) -> usize {
        self.signal_len
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Persistence {
    Persistent,
    Antipersistent,
    Brownian,
}

impl Persistence {
    pub fn from_hurst(hurst: f64) -> Self {
        if hurst > 0.5 + BROWNIAN_BAND {
            Persistence::Persistent
        } else if hurst < 0.5 - BROWNIAN_BAND {
            Persistence::Antipersistent
        } else {
            Persistence::Brownian
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Persistence::Persistent => "persistent",
            Persistence::Antipersistent => "antipersistent",
            Persistence::Brownian => "brownian",
        }
    }
}

/// Power-law fit `R(a) ≈ C·a^β` with the derived exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct HurstEstimate {
    beta: f64,
    log_intercept: f64,
    r_squared: f64,
    scale_range: (f64, f64),
    entries_used: usize,
    warnings: Vec<String>,
}

impl HurstEstimate {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `(β − 1)/2`.
    pub fn hurst(&self) -> f64 {
        (self.beta - 1.0) / 2.0
    }

    /// `2 − H`.
    pub fn dimension(&self) -> f64 {
        2.0 - self.hurst()
    }

    /// Natural log of `C`.
    pub fn log_intercept(&self) -> f64 {
        self.log_intercept
    }

    pub fn r_squared(&self) -> f64 {
        self.r_squared
    }

    /// Smallest and largest scale that entered the fit.
    pub fn scale_range(&self) -> (f64, f64) {
        self.scale_range
    }

    pub fn entries_used(&self) -> usize {
        self.entries_used
    }

    pub fn classification(&self) -> Persistence {
        Persistence::from_hurst(self.hurst())
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

/// `(β, D) = (2h + 1, 2 − h)` for `h ∈ [0, 1]`.
pub fn exponent_relations(h: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&h) {
        return Err(Error::OutOfRange(h));
    }
    Ok((2.0 * h + 1.0, 2.0 - h))
}

/// Mean of |W|² over each scale's translations, outside the cone of
/// influence when `cfg.exclude_cone`.
pub fn wavelet_autocovariance(
    c: &CwtMatrix,
    cfg: &EstimationConfig,
) -> Result<WaveletAutoCovariance> {
    if c.n_scales() < MIN_COVARIANCE_SCALES {
        return Err(Error::TooFewScales {
            required: MIN_COVARIANCE_SCALES,
            available: c.n_scales(),
        });
    }
    let entries = (0..c.n_scales())
        .map(|j| {
            let range = if cfg.exclude_cone {
                c.interior(j)
            } else {
                0..c.n_samples()
            };
            if range.is_empty() {
                return Err(Error::NoValidSamples { scale: c.scale(j) });
            }
            let samples = range.len();
            let value = c.row(j)[range].iter().map(|w| w.norm_sqr()).sum::<f64>() / samples as f64;
            Ok(CovarianceEntry {
                scale: c.scale(j),
                value,
                samples,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WaveletAutoCovariance {
        entries,
        wavelet: c.wavelet().kind(),
        signal_len: c.n_samples(),
    })
}

fn fit_bounds(w: &WaveletAutoCovariance, cfg: &EstimationConfig) -> Result<(f64, f64)> {
    let first = w.entries[0].scale;
    let last = w.entries[w.entries.len() - 1].scale;
    match cfg.scale_range {
        ScaleRange::Automatic => Ok((2.0 * first, last / 2.0)),
        ScaleRange::Fixed { a_min, a_max } => {
            if a_min.partial_cmp(&a_max) != Some(std::cmp::Ordering::Less) {
                return Err(Error::InvalidParameter(format!(
                    "fit range [{a_min}, {a_max}] is empty"
                )));
            }
            if a_min < first * (1.0 - RANGE_SLACK) || a_max > last * (1.0 + RANGE_SLACK) {
                return Err(Error::InvalidParameter(format!(
                    "fit range [{a_min}, {a_max}] is outside the grid [{first}, {last}]"
                )));
            }
            Ok((a_min, a_max))
        }
    }
}

/// Least-squares line through `(ln a, ln R̂)` over the configured range.
/// Non-positive entries are skipped with a warning.
pub fn fit_power_law(w: &WaveletAutoCovariance, cfg: &EstimationConfig) -> Result<HurstEstimate> {
    let (lo, hi) = fit_bounds(w, cfg)?;
    let in_range: Vec<&CovarianceEntry> = w
        .entries
        .iter()
        .filter(|e| e.scale >= lo * (1.0 - RANGE_SLACK) && e.scale <= hi * (1.0 + RANGE_SLACK))
        .collect();
    let used: Vec<&&CovarianceEntry> = in_range.iter().filter(|e| e.value > 0.0).collect();
    let mut warnings = Vec::new();
    let skipped = in_range.len() - used.len();
    if skipped > 0 {
        warnings.push(format!("skipped {skipped} non-positive covariance entries"));
    }
    if used.len() < MIN_FIT_ENTRIES {
        return Err(Error::DegenerateFit(format!(
            "{} positive entries in [{lo}, {hi}], need {MIN_FIT_ENTRIES}",
            used.len()
        )));
    }
    let x: Vec<f64> = used.iter().map(|e| e.scale.ln()).collect();
    let y: Vec<f64> = used.iter().map(|e| e.value.ln()).collect();
    let line = ols(&x, &y)?;
    if !(line.slope > 1.0 && line.slope < 3.0) {
        warnings.push(OUT_OF_BAND_WARNING.to_string());
    }
    Ok(HurstEstimate {
        beta: line.slope,
        log_intercept: line.intercept,
        r_squared: line.r_squared,
        scale_range: (used[0].scale, used[used.len() - 1].scale),
        entries_used: used.len(),
        warnings,
    })
}

/// Transform, auto-covariance and power-law fit in one call.
pub fn hurst_from_series(
    f: &TimeSeries,
    w: &MotherWavelet,
    g: &ScaleGrid,
    cfg: &EstimationConfig,
) -> Result<HurstEstimate> {
    let c = cwt_fft(f, w, g)?;
    let cov = wavelet_autocovariance(&c, cfg)?;
    fit_power_law(&cov, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(c: f64, beta: f64) -> WaveletAutoCovariance {
        let grid = ScaleGrid::log_spaced(2.0, 128.0, 8).unwrap();
        let entries = grid
            .scales()
            .iter()
            .map(|&a| CovarianceEntry {
                scale: a,
                value: c * a.powf(beta),
                samples: 100,
            })
            .collect();
        WaveletAutoCovariance::from_entries(entries, WaveletKind::MexicanHat, 1000).unwrap()
    }

    #[test]
    fn exact_power_law() {
        let est = fit_power_law(&model(3.0, 2.5), &EstimationConfig::default()).unwrap();
        assert!((est.beta() - 2.5).abs() < 1e-12);
        assert!((est.log_intercept().exp() - 3.0).abs() < 1e-11);
        assert_eq!(est.r_squared(), 1.0);
        assert_eq!(est.classification(), Persistence::Persistent);
        assert!(est.warnings().is_empty());
        let (lo, hi) = est.scale_range();
        assert!((lo - 4.0).abs() < 1e-12 && (hi - 64.0).abs() < 1e-9);
    }

    #[test]
    fn reference_slope_relations() {
        let est = fit_power_law(&model(1.0, 2.658), &EstimationConfig::default()).unwrap();
        assert!((est.hurst() - 0.829).abs() < 1e-9);
        assert!((est.dimension() - 1.171).abs() < 1e-9);
    }

    #[test]
    fn relations_at_the_endpoints() {
        assert_eq!(exponent_relations(0.5).unwrap(), (2.0, 1.5));
        assert_eq!(exponent_relations(1.0).unwrap(), (3.0, 1.0));
        assert_eq!(exponent_relations(0.0).unwrap(), (1.0, 2.0));
        assert_eq!(exponent_relations(1.5), Err(Error::OutOfRange(1.5)));
        assert!(exponent_relations(f64::NAN).is_err());
    }

    #[test]
    fn classification_band() {
        assert_eq!(Persistence::from_hurst(0.56), Persistence::Persistent);
        assert_eq!(Persistence::from_hurst(0.55), Persistence::Brownian);
        assert_eq!(Persistence::from_hurst(0.45), Persistence::Brownian);
        assert_eq!(Persistence::from_hurst(0.44), Persistence::Antipersistent);
    }

    #[test]
    fn flat_spectrum_warns() {
        let est = fit_power_law(&model(2.0, 0.0), &EstimationConfig::default()).unwrap();
        assert!(est.beta().abs() < 1e-12);
        assert_eq!(est.warnings(), &[OUT_OF_BAND_WARNING.to_string()]);
    }

    #[test]
    fn non_positive_entries_are_skipped() {
        let mut entries = model(1.0, 2.0).entries().to_vec();
        entries[20].value = 0.0;
        let cov = WaveletAutoCovariance::from_entries(entries, WaveletKind::Haar, 10).unwrap();
        let est = fit_power_law(&cov, &EstimationConfig::default()).unwrap();
        assert!((est.beta() - 2.0).abs() < 1e-12);
        assert!(est.warnings()[0].contains("skipped 1"));
    }

    #[test]
    fn degenerate_and_invalid_ranges() {
        let cov = model(1.0, 2.0);
        let narrow = EstimationConfig {
            scale_range: ScaleRange::Fixed {
                a_min: 4.0,
                a_max: 4.5,
            },
            ..Default::default()
        };
        assert!(matches!(
            fit_power_law(&cov, &narrow),
            Err(Error::DegenerateFit(_))
        ));
        let outside = EstimationConfig {
            scale_range: ScaleRange::Fixed {
                a_min: 1.0,
                a_max: 64.0,
            },
            ..Default::default()
        };
        assert!(matches!(
            fit_power_law(&cov, &outside),
            Err(Error::InvalidParameter(_))
        ));
        let fixed = EstimationConfig {
            scale_range: ScaleRange::Fixed {
                a_min: 2.0,
                a_max: 128.0,
            },
            ..Default::default()
        };
        assert_eq!(
            fit_power_law(&cov, &fixed).unwrap().entries_used(),
            cov.entries().len()
        );
    }

    #[test]
    fn covariance_of_zero_signal() {
        let s = TimeSeries::from_samples(vec![0.0; 512]).unwrap();
        let g = ScaleGrid::cone_limited(&s, &MotherWavelet::mexican_hat(), 8).unwrap();
        let c = cwt_fft(&s, &MotherWavelet::mexican_hat(), &g).unwrap();
        let cov = wavelet_autocovariance(&c, &EstimationConfig::default()).unwrap();
        assert!(cov
            .entries()
            .iter()
            .all(|e| e.value == 0.0 && e.samples > 0));
        assert!(matches!(
            fit_power_law(&cov, &EstimationConfig::default()),
            Err(Error::DegenerateFit(_))
        ));
    }

    #[test]
    fn cone_can_empty_a_scale() {
        let s =
            TimeSeries::from_samples((0..256).map(|k| (k as f64 * 0.1).sin()).collect()).unwrap();
        let g = ScaleGrid::for_series(&s, 8).unwrap();
        let c = cwt_fft(&s, &MotherWavelet::mexican_hat(), &g).unwrap();
        assert!(matches!(
            wavelet_autocovariance(&c, &EstimationConfig::default()),
            Err(Error::NoValidSamples { .. })
        ));
        let all = EstimationConfig {
            exclude_cone: false,
            ..Default::default()
        };
        assert!(wavelet_autocovariance(&c, &all).is_ok());
    }
}
