use crate::wavelet::CwtMatrix;

/// Normalized wavelet energy `S[j][i] = |W[j][i]|² / a_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalogram {
    values: Vec<Vec<f64>>,
    scales: Vec<f64>,
    dt: f64,
    t0: f64,
}

impl Scalogram {
    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn row(&self, j: usize) -> &[f64] {
        &self.values[j]
    }

    pub fn get(&self, j: usize, i: usize) -> f64 {
        self.values[j][i]
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn n_scales(&self) -> usize {
        self.values.len()
    }

    pub fn n_samples(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    /// Translation index of the largest value at scale `j` (first on ties).
    pub fn argmax(&self, j: usize) -> usize {
        let row = &self.values[j];
        let mut best = 0;
        for (i, &v) in row.iter().enumerate() {
            if v > row[best] {
                best = i;
            }
        }
        best
    }
}

pub fn scalogram(c: &CwtMatrix) -> Scalogram {
    let values = c
        .coefficients()
        .iter()
        .zip(c.grid().scales())
        .map(|(row, &a)| row.iter().map(|w| w.norm_sqr() / a).collect())
        .collect();
    Scalogram {
        values,
        scales: c.grid().scales().to_vec(),
        dt: c.dt(),
        t0: c.t0(),
    }
}
