use crate::error::{Error, Result};

/// A uniformly sampled real-valued signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
    dt: f64,
    t0: f64,
}

impl TimeSeries {
    /// Builds a series after checking length, finiteness and spacing.
    pub fn new(samples: Vec<f64>, dt: f64, t0: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidSignal(format!(
                "need at least 2 samples, got {}",
                samples.len()
            )));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidSignal(format!(
                "sample interval {dt} must be > 0"
            )));
        }
        if !t0.is_finite() {
            return Err(Error::InvalidSignal("start abscissa is not finite".into()));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal(format!("sample {i} is not finite")));
        }
        Ok(Self { samples, dt, t0 })
    }

    /// Unit spacing starting at zero.
    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        Self::new(samples, 1.0, 0.0)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Abscissa of sample `i`.
    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    /// Abscissa of a fractional sample position.
    pub fn time_at(&self, position: f64) -> f64 {
        self.t0 + position * self.dt
    }

    /// Last abscissa covered by the samples.
    pub fn t_end(&self) -> f64 {
        self.time(self.samples.len() - 1)
    }

    /// Same sampling, new values. Values must be finite.
    pub fn with_samples(&self, samples: Vec<f64>) -> Result<Self> {
        Self::new(samples, self.dt, self.t0)
    }

    /// Multiplies every sample by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        self.with_samples(self.samples.iter().map(|v| v * factor).collect())
    }

    /// Circular shift by `shift` samples (positive moves content to the right).
    pub fn rotated(&self, shift: isize) -> Self {
        let n = self.samples.len() as isize;
        let k = shift.rem_euclid(n) as usize;
        let mut samples = self.samples.clone();
        samples.rotate_right(k);
        Self {
            samples,
            dt: self.dt,
            t0: self.t0,
        }
    }
}
