use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Smallest accepted path length.
pub const MIN_FBM_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FbmParams {
    hurst: f64,
    n: usize,
    seed: u64,
}

impl FbmParams {
    pub fn new(hurst: f64, n: usize, seed: u64) -> Result<Self> {
        if !(hurst > 0.0 && hurst < 1.0) {
            return Err(Error::InvalidHurst(hurst));
        }
        if n < MIN_FBM_LEN {
            return Err(Error::InvalidParameter(format!(
                "fBm length {n} is below the minimum {MIN_FBM_LEN}"
            )));
        }
        Ok(Self { hurst, n, seed })
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// A generated path and any notes about the synthesis.
#[derive(Debug, Clone, PartialEq)]
pub struct FbmSample {
    pub series: TimeSeries,
    pub warnings: Vec<String>,
}

/// Autocovariance of unit-variance fractional Gaussian noise at lag `k`.
fn fgn_autocovariance(k: usize, hurst: f64) -> f64 {
    let k = k as f64;
    let h2 = 2.0 * hurst;
    0.5 * ((k + 1.0).powf(h2) - 2.0 * k.powf(h2) + (k - 1.0).abs().powf(h2))
}

/// Fractional Brownian motion on `t = 0, 1, …, n−1` with `B(0) = 0`.
pub fn gen_fbm(p: &FbmParams) -> Result<TimeSeries> {
    synthesize_fbm(p).map(|s| s.series)
}

/// Circulant embedding of the fGn covariance, then cumulative summation.
///
/// The `n − 1` increments are the real part of
/// `FFT(√(λ/m)·(z₁ + i·z₂))`, where `λ` is the spectrum of the circulant
/// embedding of size `m = 2(n − 1)` and the normal pairs are drawn in index
/// order. Negative eigenvalues, if any, are clamped to zero and reported.
pub fn synthesize_fbm(p: &FbmParams) -> Result<FbmSample> {
    let p = FbmParams::new(p.hurst, p.n, p.seed)?;
    let steps = p.n - 1;
    let m = 2 * steps;
    let mut row: Vec<Complex64> = (0..m)
        .map(|k| {
            let lag = if k <= steps { k } else { m - k };
            Complex64::new(fgn_autocovariance(lag, p.hurst), 0.0)
        })
        .collect();
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(m);
    fft.process(&mut row);

    let mut warnings = Vec::new();
    let min_eig = row.iter().map(|c| c.re).fold(f64::INFINITY, f64::min);
    if min_eig < -1e-10 {
        warnings.push(format!(
            "circulant embedding not nonnegative-definite (min eigenvalue {min_eig:.3e}); negative eigenvalues clamped, output is approximate"
        ));
    }

    let mut rng = super::stream(p.seed);
    let mut y: Vec<Complex64> = row
        .iter()
        .map(|lam| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im) * (lam.re.max(0.0) / m as f64).sqrt()
        })
        .collect();
    fft.process(&mut y);

    let mut path = Vec::with_capacity(p.n);
    let mut acc = 0.0;
    path.push(acc);
    for inc in &y[..steps] {
        acc += inc.re;
        path.push(acc);
    }
    Ok(FbmSample {
        series: TimeSeries::new(path, 1.0, 0.0)?,
        warnings,
    })
}
