//! Continuous wavelet transform on a time × scale grid.
//!
//! Both routes discretize `W(b, a) = a^{-1/2} ∫ f(t) conj(ψ((t - b)/a)) dt`
//! with the rectangle rule on the sample grid, evaluate `b` at every sample,
//! and treat the signal as zero outside its support. `cwt_direct` sums in the
//! time domain; `cwt_fft` multiplies spectra of the zero-padded signal and
//! of the sampled, dilated wavelet, which gives the same linear correlation.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::series::TimeSeries;
use crate::wavelet::{MotherWavelet, ScaleGrid};

/// Wavelet coefficients `W[j][i]` for scale `j` and translation `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CwtMatrix {
    coefficients: Vec<Vec<Complex64>>,
    grid: ScaleGrid,
    wavelet: MotherWavelet,
    cone: Vec<usize>,
    dt: f64,
    t0: f64,
}

impl CwtMatrix {
    /// Assembles a matrix from precomputed rows. Rows must match the grid and
    /// share one length; all entries must be finite.
    pub fn from_parts(
        coefficients: Vec<Vec<Complex64>>,
        grid: ScaleGrid,
        wavelet: MotherWavelet,
        dt: f64,
        t0: f64,
    ) -> Result<Self> {
        if coefficients.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "{} coefficient rows for {} scales",
                coefficients.len(),
                grid.len()
            )));
        }
        let n = coefficients.first().map_or(0, Vec::len);
        if n < 2 || coefficients.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter(
                "coefficient rows must share a length >= 2".into(),
            ));
        }
        if coefficients
            .iter()
            .flatten()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::InvalidParameter("non-finite coefficient".into()));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sample interval {dt} must be > 0"
            )));
        }
        let cone = cone_widths(&grid, &wavelet, dt);
        Ok(Self {
            coefficients,
            grid,
            wavelet,
            cone,
            dt,
            t0,
        })
    }

    pub fn coefficients(&self) -> &[Vec<Complex64>] {
        &self.coefficients
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        &self.coefficients[j]
    }

    pub fn get(&self, j: usize, i: usize) -> Complex64 {
        self.coefficients[j][i]
    }

    /// |W[j][i]|.
    pub fn modulus(&self, j: usize, i: usize) -> f64 {
        self.coefficients[j][i].norm()
    }

    pub fn grid(&self) -> &ScaleGrid {
        &self.grid
    }

    pub fn scale(&self, j: usize) -> f64 {
        self.grid.scales()[j]
    }

    pub fn n_scales(&self) -> usize {
        self.coefficients.len()
    }

    pub fn n_samples(&self) -> usize {
        self.coefficients[0].len()
    }

    pub fn wavelet(&self) -> &MotherWavelet {
        &self.wavelet
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// Abscissa of translation index `i`.
    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    /// Number of boundary-affected samples at each end, per scale.
    pub fn cone_of_influence(&self) -> &[usize] {
        &self.cone
    }

    /// Translations at scale `j` not touched by the zero extension. Empty
    /// when the cone covers the whole row.
    pub fn interior(&self, j: usize) -> Range<usize> {
        let n = self.n_samples();
        let c = self.cone[j];
        if 2 * c >= n {
            c.min(n)..c.min(n)
        } else {
            c..n - c
        }
    }

    pub fn is_interior(&self, j: usize, i: usize) -> bool {
        self.interior(j).contains(&i)
    }

    /// Entrywise `self - other`, for comparisons. Shapes must agree.
    pub fn max_abs_diff(&self, other: &CwtMatrix) -> f64 {
        self.coefficients
            .iter()
            .flatten()
            .zip(other.coefficients.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn cone_widths(grid: &ScaleGrid, wavelet: &MotherWavelet, dt: f64) -> Vec<usize> {
    grid.scales()
        .iter()
        .map(|a| (wavelet.support_radius() * a / dt - 1e-9).ceil().max(0.0) as usize)
        .collect()
}

/// Sampled, dilated, conjugated wavelet: `taps[m - lo] = dt/√a · conj(ψ(m·dt/a))`.
struct Kernel {
    lo: isize,
    taps: Vec<Complex64>,
}

impl Kernel {
    fn new(wavelet: &MotherWavelet, a: f64, dt: f64, n: usize) -> Self {
        let (s_lo, s_hi) = wavelet.support();
        let reach = n as isize - 1;
        let lo = ((s_lo * a / dt).floor() as isize).max(-reach);
        let hi = ((s_hi * a / dt).ceil() as isize).min(reach);
        let weight = dt / a.sqrt();
        let taps = (lo..=hi)
            .map(|m| wavelet.eval(m as f64 * dt / a).conj() * weight)
            .collect();
        Self { lo, taps }
    }

    fn hi(&self) -> isize {
        self.lo + self.taps.len() as isize - 1
    }
}

fn prepare(series: &TimeSeries, grid: &ScaleGrid) -> Result<()> {
    grid.check_against(series)?;
    Ok(())
}

fn finish(
    rows: Vec<Vec<Complex64>>,
    series: &TimeSeries,
    wavelet: &MotherWavelet,
    grid: &ScaleGrid,
) -> CwtMatrix {
    let cone = cone_widths(grid, wavelet, series.dt());
    CwtMatrix {
        coefficients: rows,
        grid: grid.clone(),
        wavelet: *wavelet,
        cone,
        dt: series.dt(),
        t0: series.t0(),
    }
}

/// Rectangle-rule CWT by direct summation.
pub fn cwt_direct(
    series: &TimeSeries,
    wavelet: &MotherWavelet,
    grid: &ScaleGrid,
) -> Result<CwtMatrix> {
    prepare(series, grid)?;
    let f = series.samples();
    let n = f.len();
    let dt = series.dt();
    let real = !wavelet.is_complex();
    let rows = grid
        .scales()
        .par_iter()
        .map(|&a| {
            let kernel = Kernel::new(wavelet, a, dt, n);
            (0..n)
                .map(|i| {
                    let i = i as isize;
                    let k_lo = (i + kernel.lo).max(0);
                    let k_hi = (i + kernel.hi()).min(n as isize - 1);
                    let mut acc = Complex64::new(0.0, 0.0);
                    for k in k_lo..=k_hi {
                        acc += kernel.taps[(k - i - kernel.lo) as usize] * f[k as usize];
                    }
                    if real {
                        acc.im = 0.0;
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(finish(rows, series, wavelet, grid))
}

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    signal_spectrum: Vec<Complex64>,
}

/// CWT through per-scale spectral multiplication. Agrees with
/// [`cwt_direct`] to round-off.
pub fn cwt_fft(
    series: &TimeSeries,
    wavelet: &MotherWavelet,
    grid: &ScaleGrid,
) -> Result<CwtMatrix> {
    prepare(series, grid)?;
    let f = series.samples();
    let n = f.len();
    let dt = series.dt();
    let real = !wavelet.is_complex();

    let kernels: Vec<Kernel> = grid
        .scales()
        .iter()
        .map(|&a| Kernel::new(wavelet, a, dt, n))
        .collect();
    let lengths: Vec<usize> = kernels
        .iter()
        .map(|k| (n + k.taps.len()).next_power_of_two())
        .collect();

    // One plan and one signal spectrum per distinct padded length.
    let mut planner = FftPlanner::<f64>::new();
    let mut plans: BTreeMap<usize, Plans> = BTreeMap::new();
    for &len in &lengths {
        plans.entry(len).or_insert_with(|| {
            let forward = planner.plan_fft_forward(len);
            let inverse = planner.plan_fft_inverse(len);
            let mut spectrum: Vec<Complex64> = f
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
                .take(len)
                .collect();
            forward.process(&mut spectrum);
            Plans {
                forward,
                inverse,
                signal_spectrum: spectrum,
            }
        });
    }

    let rows = kernels
        .par_iter()
        .zip(lengths.par_iter())
        .map(|(kernel, &len)| {
            let plan = &plans[&len];
            // g[m'] = taps at m = -m', stored circularly.
            let mut g = vec![Complex64::new(0.0, 0.0); len];
            for (offset, tap) in kernel.taps.iter().enumerate() {
                let m = kernel.lo + offset as isize;
                g[(-m).rem_euclid(len as isize) as usize] = *tap;
            }
            plan.forward.process(&mut g);
            for (gk, fk) in g.iter_mut().zip(&plan.signal_spectrum) {
                *gk *= fk;
            }
            plan.inverse.process(&mut g);
            let scale = 1.0 / len as f64;
            g.truncate(n);
            for c in g.iter_mut() {
                *c *= scale;
                if real {
                    c.im = 0.0;
                }
            }
            g
        })
        .collect();
    Ok(finish(rows, series, wavelet, grid))
}
