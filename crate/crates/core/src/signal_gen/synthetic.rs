use std::f64::consts::PI;

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Minimum length of the closed-form test signals.
pub const MIN_SYNTHETIC_LEN: usize = 16;

/// Location of the step in [`gen_chirp_jump`].
pub const CHIRP_JUMP_AT: f64 = 0.5;
/// Height of the step in [`gen_chirp_jump`].
pub const CHIRP_JUMP_SIZE: f64 = 3.0;
/// Location of the cusp in [`gen_chirp_jump`].
pub const CHIRP_CUSP_AT: f64 = 0.6;

/// Additive i.i.d. Gaussian noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    sigma: f64,
    seed: u64,
}

impl NoiseSpec {
    pub fn new(sigma: f64, seed: u64) -> Result<Self> {
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "noise sigma {sigma} must be >= 0"
            )));
        }
        Ok(Self { sigma, seed })
    }

    /// Zero noise.
    pub fn none() -> Self {
        Self {
            sigma: 0.0,
            seed: 0,
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn draw(&self, n: usize) -> Option<Vec<f64>> {
        if self.sigma == 0.0 {
            return None;
        }
        let mut rng = super::stream(self.seed);
        Some(
            (0..n)
                .map(|_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    self.sigma * z
                })
                .collect(),
        )
    }
}

/// `x_i = i/(n−1)`, `i = 0..n`.
pub fn unit_grid(n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n).map(|i| i as f64 / last).collect()
}

fn sample_unit(n: usize, noise: &NoiseSpec, g: impl Fn(f64) -> f64) -> Result<TimeSeries> {
    if n < MIN_SYNTHETIC_LEN {
        return Err(Error::InvalidParameter(format!(
            "length {n} is below the minimum {MIN_SYNTHETIC_LEN}"
        )));
    }
    let noise = NoiseSpec::new(noise.sigma, noise.seed)?;
    let mut samples: Vec<f64> = unit_grid(n).into_iter().map(g).collect();
    if let Some(eps) = noise.draw(n) {
        samples.iter_mut().zip(eps).for_each(|(v, e)| *v += e);
    }
    TimeSeries::new(samples, 1.0 / (n - 1) as f64, 0.0)
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `2·sin(4πx) − 6·|x − 0.4|^0.3 − 0.5·sign(0.7 − x) + ε` on `x = i/(n−1)`,
/// with `sign(0) = 0`.
pub fn gen_eq11(n: usize, noise: &NoiseSpec) -> Result<TimeSeries> {
    sample_unit(n, noise, |x| {
        2.0 * (4.0 * PI * x).sin() - 6.0 * (x - 0.4).abs().powf(0.3) - 0.5 * sign(0.7 - x)
    })
}

/// `2·sin(2π(x + 2x²)) + 3·H(x − 0.5) − 25·|x − 0.6|^0.4 + ε` on
/// `x = i/(n−1)`, with `H(0) = 1`: a slow chirp carrying a jump of 3 at 0.5
/// and a 0.4-power cusp at 0.6.
pub fn gen_chirp_jump(n: usize, noise: &NoiseSpec) -> Result<TimeSeries> {
    sample_unit(n, noise, |x| {
        let step = if x >= CHIRP_JUMP_AT {
            CHIRP_JUMP_SIZE
        } else {
            0.0
        };
        2.0 * (2.0 * PI * (x + 2.0 * x * x)).sin() + step
            - 25.0 * (x - CHIRP_CUSP_AT).abs().powf(0.4)
    })
}

/// `f` plus seeded i.i.d. `N(0, σ²)` samples. With `σ = 0` the input is
/// returned unchanged.
pub fn add_noise(f: &TimeSeries, noise: &NoiseSpec) -> Result<TimeSeries> {
    let noise = NoiseSpec::new(noise.sigma, noise.seed)?;
    match noise.draw(f.len()) {
        None => Ok(f.clone()),
        Some(eps) => f.with_samples(f.samples().iter().zip(eps).map(|(v, e)| v + e).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eq11_reference_values() {
        let s = gen_eq11(1024, &NoiseSpec::none()).unwrap();
        let expected0 = -6.0 * 0.4_f64.powf(0.3) - 0.5;
        assert_eq!(s.samples()[0], expected0);
        assert!((expected0 - (-5.057946757594244)).abs() < 1e-12);
        // x = 0.4 is on the grid when n − 1 is a multiple of 5.
        let s = gen_eq11(1001, &NoiseSpec::none()).unwrap();
        let v = s.samples()[400];
        assert!((v - (2.0 * (1.6 * PI).sin() - 0.5)).abs() < 1e-12);
        assert!((v - (-2.4021130325903073)).abs() < 1e-12);
        // sign(0) = 0 at x = 0.7 exactly.
        let x = 700.0 / 1000.0;
        let expected = 2.0 * (4.0 * PI * x).sin() - 6.0 * (x - 0.4_f64).abs().powf(0.3);
        assert_eq!(s.samples()[700], expected);
    }

    #[test]
    fn eq11_jump_size_across_point_seven() {
        let s = gen_eq11(1001, &NoiseSpec::none()).unwrap();
        let smooth = |x: f64| 2.0 * (4.0 * PI * x).sin() - 6.0 * (x - 0.4_f64).abs().powf(0.3);
        let left = s.samples()[699] - smooth(0.699);
        let right = s.samples()[701] - smooth(0.701);
        assert!((right - left - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chirp_jump_construction() {
        let n = 1001;
        let s = gen_chirp_jump(n, &NoiseSpec::none()).unwrap();
        let f = s.samples();
        // At x = 0.5 the step is already on.
        let carrier = |x: f64| {
            2.0 * (2.0 * PI * (x + 2.0 * x * x)).sin() - 25.0 * (x - 0.6_f64).abs().powf(0.4)
        };
        assert!((f[500] - carrier(0.5) - 3.0).abs() < 1e-12);
        assert!((f[499] - carrier(0.499)).abs() < 1e-12);
        // Cusp term vanishes at 0.6.
        assert!((f[600] - (2.0 * (2.0 * PI * (0.6 + 0.72_f64)).sin() + 3.0)).abs() < 1e-12);
        assert_eq!(gen_chirp_jump(n, &NoiseSpec::none()).unwrap(), s);
    }

    #[test]
    fn short_lengths_rejected() {
        assert!(gen_eq11(15, &NoiseSpec::none()).is_err());
        assert!(gen_chirp_jump(8, &NoiseSpec::none()).is_err());
        assert!(NoiseSpec::new(-1.0, 0).is_err());
    }

    #[test]
    fn zero_noise_is_identity() {
        let f = gen_eq11(64, &NoiseSpec::none()).unwrap();
        assert_eq!(add_noise(&f, &NoiseSpec::new(0.0, 5).unwrap()).unwrap(), f);
    }

    #[test]
    fn noise_statistics() {
        let n = 100_000;
        let f = TimeSeries::from_samples(vec![1.5; n]).unwrap();
        let g = add_noise(&f, &NoiseSpec::new(2.0, 42).unwrap()).unwrap();
        let d: Vec<f64> = g
            .samples()
            .iter()
            .zip(f.samples())
            .map(|(a, b)| a - b)
            .collect();
        let mean = d.iter().sum::<f64>() / n as f64;
        let std = (d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
        // 3-sigma bounds: 3·2/√n ≈ 0.019 for the mean, 3·2/√(2n) ≈ 0.013 for the std.
        assert!(mean.abs() < 0.02, "{mean}");
        assert!((std - 2.0).abs() < 0.02, "{std}");
        assert_eq!(add_noise(&f, &NoiseSpec::new(2.0, 42).unwrap()).unwrap(), g);
        assert_eq!(f.samples()[0], 1.5);
    }
}
