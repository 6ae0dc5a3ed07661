//! Jump and cusp detection from modulus-maxima lines.
//!
//! A maxima line that starts among the finest scales, persists across
//! enough octaves and stands clear of the noise floor marks a singular
//! point. Along such a line |W| ~ a^(α + 1/2) under the 1/√a normalization,
//! so the log-log slope minus one half estimates the local exponent α:
//! α ≈ 0 for a jump, 0 < α < 1 for a cusp.

use crate::error::{Error, Result};
use crate::fit::ols;
use crate::wavelet::{modulus_maxima, scalogram, CwtMatrix, MaximaLine, MaximaPoint};

/// Lines whose exponent estimate reaches this value are treated as smooth
/// background and dropped.
pub const ALPHA_CEILING: f64 = 1.5;

/// Lower end of the reported exponent range.
pub const ALPHA_FLOOR: f64 = -0.5;

// MAD to standard deviation for Gaussian data.
const MAD_TO_SIGMA: f64 = 0.6745;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionConfig {
    /// A line must reach one of this many finest scales.
    pub fine_scale_count: usize,
    /// Minimum scale range of a line, in octaves.
    pub persistence_octaves: f64,
    /// Threshold in units of the estimated noise level.
    pub threshold_multiplier: f64,
    /// Width, in octaves above the finest grid scale, of the band used to
    /// fit the exponent during detection.
    pub fit_octaves: f64,
    /// Exponent estimates below this classify as jumps.
    pub jump_cusp_boundary: f64,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            fine_scale_count: 4,
            persistence_octaves: 2.0,
            threshold_multiplier: 3.0,
            fit_octaves: 3.0,
            jump_cusp_boundary: 0.15,
        }
    }
}

impl DetectionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.fine_scale_count < 1 {
            return Err(Error::InvalidParameter(
                "fine_scale_count must be >= 1".into(),
            ));
        }
        if !(self.persistence_octaves >= 0.0 && self.persistence_octaves.is_finite()) {
            return Err(Error::InvalidParameter(
                "persistence_octaves must be >= 0".into(),
            ));
        }
        if !(self.threshold_multiplier >= 0.0 && self.threshold_multiplier.is_finite()) {
            return Err(Error::InvalidParameter(
                "threshold_multiplier must be >= 0".into(),
            ));
        }
        if !(self.fit_octaves > 0.0 && self.fit_octaves.is_finite()) {
            return Err(Error::InvalidParameter("fit_octaves must be > 0".into()));
        }
        if !(self.jump_cusp_boundary > ALPHA_FLOOR && self.jump_cusp_boundary < 1.0) {
            return Err(Error::InvalidParameter(
                "jump_cusp_boundary must lie in (-0.5, 1)".into(),
            ));
        }
        Ok(())
    }

    /// Class of an exponent estimate.
    pub fn classify(&self, alpha: Option<f64>) -> SingularityKind {
        match alpha {
            Some(a) if a < self.jump_cusp_boundary => SingularityKind::Jump,
            Some(a) if a < 1.0 => SingularityKind::Cusp,
            _ => SingularityKind::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularityKind {
    Jump,
    Cusp,
    Unknown,
}

impl SingularityKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SingularityKind::Jump => "jump",
            SingularityKind::Cusp => "cusp",
            SingularityKind::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularityEvent {
    /// Abscissa of the line's finest-scale point.
    pub location: f64,
    /// Sample index of `location`.
    pub index: usize,
    pub kind: SingularityKind,
    /// Peak scalogram value on the line over the fine scales.
    pub strength: f64,
    pub alpha: Option<f64>,
    pub line_span_octaves: f64,
    /// Significance statistic compared against the threshold.
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularityReport {
    events: Vec<SingularityEvent>,
    noise_level: f64,
    threshold: f64,
}

impl SingularityReport {
    /// Events in increasing location.
    pub fn events(&self) -> &[SingularityEvent] {
        &self.events
    }

    /// Robust noise level of the finest-scale coefficients.
    pub fn noise_level(&self) -> f64 {
        self.noise_level
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn locations(&self) -> Vec<f64> {
        self.events.iter().map(|e| e.location).collect()
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn mad(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    let m = median(&mut v);
    let mut dev: Vec<f64> = values.iter().map(|x| (x - m).abs()).collect();
    median(&mut dev)
}

/// `MAD/0.6745` of the finest-scale coefficients outside the cone of
/// influence. For complex coefficients the real and imaginary levels add
/// in quadrature, so the result is the noise level of |W|.
pub fn noise_level(c: &CwtMatrix) -> f64 {
    let mut range = c.interior(0);
    if range.is_empty() {
        range = 0..c.n_samples();
    }
    let row = &c.row(0)[range];
    let re: Vec<f64> = row.iter().map(|w| w.re).collect();
    let im: Vec<f64> = row.iter().map(|w| w.im).collect();
    mad(&re).hypot(mad(&im)) / MAD_TO_SIGMA
}

fn fit_exponent(c: &CwtMatrix, points: &[&MaximaPoint]) -> Result<f64> {
    let usable: Vec<&&MaximaPoint> = points.iter().filter(|p| p.value > 0.0).collect();
    if usable.len() < 3 {
        return Err(Error::LineTooShort {
            usable: usable.len(),
        });
    }
    let x: Vec<f64> = usable.iter().map(|p| c.scale(p.j).ln()).collect();
    let y: Vec<f64> = usable.iter().map(|p| p.value.ln()).collect();
    Ok(ols(&x, &y)?.slope - 0.5)
}

/// Local exponent from the decay of |W| along `line`: the least-squares
/// slope of log|W| on log a minus one half. Points inside the cone of
/// influence and in the coarsest octave of the grid are excluded.
pub fn estimate_cusp_exponent(c: &CwtMatrix, line: &MaximaLine) -> Result<f64> {
    let top = c.grid().a_max() / 2.0 * (1.0 + 1e-9);
    let points: Vec<&MaximaPoint> = line
        .points()
        .iter()
        .filter(|p| c.scale(p.j) <= top && c.is_interior(p.j, p.i))
        .collect();
    fit_exponent(c, &points)
}

struct Candidate {
    index: usize,
    score: f64,
    alpha: Option<f64>,
    strength: f64,
    span: f64,
}

/// Locates and classifies singular points.
///
/// 1. Extract modulus-maxima lines.
/// 2. Keep lines whose finest point lies within the `fine_scale_count`
///    finest scales, that span `persistence_octaves`, and whose points over
///    that span are all outside the cone of influence.
/// 3. Score each line by the smaller of |W| at the top of the persistence
///    span and the median |W| over it; keep scores above
///    `threshold_multiplier × σ̂`. The wavelets have unit energy, so white
///    noise has the same level σ̂ at every scale.
/// 4. Fit the exponent over the line's interior points within
///    `fit_octaves` of the finest grid scale; drop lines at or above
///    [`ALPHA_CEILING`] as smooth background.
/// 5. Suppress weaker lines within `2·a₁·2^persistence/dt` samples of a
///    stronger one.
pub fn detect_singularities(c: &CwtMatrix, cfg: &DetectionConfig) -> Result<SingularityReport> {
    cfg.validate()?;
    if c.n_scales() < cfg.fine_scale_count {
        return Err(Error::TooFewScales {
            required: cfg.fine_scale_count,
            available: c.n_scales(),
        });
    }
    let scales = c.grid().scales();
    let energy = scalogram(c);
    let maxima = modulus_maxima(c, 0.0);
    let sigma = noise_level(c);
    let threshold = cfg.threshold_multiplier * sigma;
    let fit_top = scales[0] * cfg.fit_octaves.exp2() * (1.0 + 1e-9);

    let mut candidates = Vec::new();
    for line in maxima.lines() {
        let first = line.finest();
        if first.j >= cfg.fine_scale_count {
            continue;
        }
        let span = line.span_octaves(scales);
        if span < cfg.persistence_octaves - 1e-9 {
            continue;
        }
        let persistent = line.within_octaves(scales, cfg.persistence_octaves);
        if !persistent.points().iter().all(|p| c.is_interior(p.j, p.i)) {
            continue;
        }
        let mut values: Vec<f64> = persistent.points().iter().map(|p| p.value).collect();
        let top = *values.last().unwrap_or(&0.0);
        let score = top.min(median(&mut values));
        if score.partial_cmp(&threshold) != Some(std::cmp::Ordering::Greater) {
            continue;
        }
        let fit_points: Vec<&MaximaPoint> = line
            .points()
            .iter()
            .filter(|p| scales[p.j] <= fit_top && c.is_interior(p.j, p.i))
            .collect();
        let alpha = fit_exponent(c, &fit_points).ok();
        if alpha.is_some_and(|a| a >= ALPHA_CEILING) {
            continue;
        }
        let strength = line
            .points()
            .iter()
            .filter(|p| p.j < cfg.fine_scale_count)
            .map(|p| energy.get(p.j, p.i))
            .fold(0.0, f64::max);
        candidates.push(Candidate {
            index: first.i,
            score,
            alpha: alpha.map(|a| a.max(ALPHA_FLOOR)),
            strength,
            span,
        });
    }

    candidates.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.index.cmp(&b.index)));
    let radius = 2.0 * scales[0] * cfg.persistence_octaves.exp2() / c.dt();
    let mut kept: Vec<Candidate> = Vec::new();
    for cand in candidates {
        if kept
            .iter()
            .all(|k| k.index.abs_diff(cand.index) as f64 > radius.max(2.0))
        {
            kept.push(cand);
        }
    }
    kept.sort_by_key(|k| k.index);

    let events = kept
        .into_iter()
        .map(|k| SingularityEvent {
            location: c.time(k.index),
            index: k.index,
            kind: cfg.classify(k.alpha),
            strength: k.strength,
            alpha: k.alpha,
            line_span_octaves: k.span,
            score: k.score,
        })
        .collect();
    Ok(SingularityReport {
        events,
        noise_level: sigma,
        threshold,
    })
}
