use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::wavelet::MotherWavelet;

/// Default number of scales per octave.
pub const DEFAULT_VOICES: usize = 8;

// Relative slack when comparing the finest scale against 2*dt, so grids
// built from 2*dt survive round-off.
const FLOOR_SLACK: f64 = 1e-12;

/// Strictly increasing set of positive analysis scales, in signal time units.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    scales: Vec<f64>,
    voices: Option<usize>,
}

impl ScaleGrid {
    /// Explicit scale list.
    pub fn from_scales(scales: Vec<f64>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::InvalidScaleGrid("no scales".into()));
        }
        if scales.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::InvalidScaleGrid(
                "scales must be finite and positive".into(),
            ));
        }
        if scales.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidScaleGrid(
                "scales must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            scales,
            voices: None,
        })
    }

    /// `a_min · 2^(k/voices)` for every k that stays at or below `a_max`.
    pub fn log_spaced(a_min: f64, a_max: f64, voices: usize) -> Result<Self> {
        if voices == 0 {
            return Err(Error::InvalidScaleGrid(
                "voices per octave must be >= 1".into(),
            ));
        }
        if !(a_min.is_finite() && a_max.is_finite() && a_min > 0.0 && a_max >= a_min) {
            return Err(Error::InvalidScaleGrid(format!(
                "need 0 < a_min <= a_max, got [{a_min}, {a_max}]"
            )));
        }
        let steps = ((a_max / a_min).log2() * voices as f64 + 1e-9).floor() as usize;
        let scales = (0..=steps)
            .map(|k| a_min * (k as f64 / voices as f64).exp2())
            .collect();
        Ok(Self {
            scales,
            voices: Some(voices),
        })
    }

    /// Exactly `count` log-spaced scales from `a_min` to `a_max` inclusive.
    pub fn with_count(a_min: f64, a_max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Self::from_scales(vec![a_min]);
        }
        if !(a_min > 0.0 && a_max > a_min) {
            return Err(Error::InvalidScaleGrid(format!(
                "need 0 < a_min < a_max, got [{a_min}, {a_max}]"
            )));
        }
        let ratio = (a_max / a_min).ln();
        let scales = (0..count)
            .map(|k| a_min * (ratio * k as f64 / (count - 1) as f64).exp())
            .collect();
        Self::from_scales(scales)
    }

    /// Default analysis grid: from `2·dt` to `n·dt/4`.
    pub fn for_series(series: &TimeSeries, voices: usize) -> Result<Self> {
        let dt = series.dt();
        Self::log_spaced(2.0 * dt, series.len() as f64 * dt / 4.0, voices)
    }

    /// Grid from `2·dt` up to the largest scale whose cone of influence still
    /// leaves half of the samples untouched.
    pub fn cone_limited(
        series: &TimeSeries,
        wavelet: &MotherWavelet,
        voices: usize,
    ) -> Result<Self> {
        let dt = series.dt();
        let n = series.len() as f64;
        let a_max = n * dt / (4.0 * wavelet.support_radius());
        if a_max < 2.0 * dt {
            return Err(Error::InvalidScaleGrid(format!(
                "signal of {} samples is too short for a cone-limited grid",
                series.len()
            )));
        }
        Self::log_spaced(2.0 * dt, a_max, voices)
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }

    pub fn voices(&self) -> Option<usize> {
        self.voices
    }

    pub fn a_min(&self) -> f64 {
        self.scales[0]
    }

    pub fn a_max(&self) -> f64 {
        self.scales[self.scales.len() - 1]
    }

    /// Checks the finest scale against the `2·dt` floor.
    pub fn check_against(&self, series: &TimeSeries) -> Result<()> {
        let floor = 2.0 * series.dt();
        if self.a_min() < floor * (1.0 - FLOOR_SLACK) {
            return Err(Error::ScaleTooFine {
                a_min: self.a_min(),
                floor,
            });
        }
        Ok(())
    }

    /// Octaves between scale `j` and the finest scale.
    pub fn octave(&self, j: usize) -> f64 {
        (self.scales[j] / self.scales[0]).log2()
    }
}
