use std::collections::BTreeMap;

use crate::wavelet::CwtMatrix;

/// A local maximum of |W| along translation at one scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximaPoint {
    /// Translation index.
    pub i: usize,
    /// Scale index.
    pub j: usize,
    /// |W[j][i]|.
    pub value: f64,
}

/// Maxima chained across adjacent scales, ordered from fine to coarse.
/// Consecutive points sit on consecutive scale indices.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximaLine {
    points: Vec<MaximaPoint>,
}

impl MaximaLine {
    pub fn new(points: Vec<MaximaPoint>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[MaximaPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn finest(&self) -> &MaximaPoint {
        &self.points[0]
    }

    pub fn coarsest(&self) -> &MaximaPoint {
        &self.points[self.points.len() - 1]
    }

    /// log2 of the coarsest over the finest scale of the line.
    pub fn span_octaves(&self, scales: &[f64]) -> f64 {
        (scales[self.coarsest().j] / scales[self.finest().j]).log2()
    }

    /// Points whose scale lies within `octaves` of the line's finest scale.
    pub fn within_octaves(&self, scales: &[f64], octaves: f64) -> MaximaLine {
        let a0 = scales[self.finest().j];
        MaximaLine::new(
            self.points
                .iter()
                .copied()
                .filter(|p| (scales[p.j] / a0).log2() <= octaves + 1e-9)
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MaximaSet {
    points: Vec<MaximaPoint>,
    lines: Vec<MaximaLine>,
}

impl MaximaSet {
    /// All maxima, by scale then translation.
    pub fn points(&self) -> &[MaximaPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[MaximaLine] {
        &self.lines
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}

fn row_maxima(c: &CwtMatrix, j: usize, min_fraction: f64) -> Vec<MaximaPoint> {
    let m: Vec<f64> = c.row(j).iter().map(|w| w.norm()).collect();
    let peak = m.iter().copied().fold(0.0, f64::max);
    let floor = min_fraction * peak;
    (1..m.len().saturating_sub(1))
        .filter(|&i| m[i] > m[i - 1] && m[i] >= m[i + 1] && m[i] >= floor)
        .map(|i| MaximaPoint { i, j, value: m[i] })
        .collect()
}

/// Local maxima of |W| along translation at every scale, chained into lines.
///
/// Chaining runs from coarse to fine: each maximum looks for the nearest
/// open line end at the next coarser scale within `a_{j+1}/dt` samples, and
/// each end keeps only its closest claimant. Unclaimed maxima start lines.
pub fn modulus_maxima(c: &CwtMatrix, min_amplitude_fraction: f64) -> MaximaSet {
    let n_scales = c.n_scales();
    let per_scale: Vec<Vec<MaximaPoint>> = (0..n_scales)
        .map(|j| row_maxima(c, j, min_amplitude_fraction))
        .collect();

    let mut lines: Vec<Vec<MaximaPoint>> = Vec::new();
    // Open line ends at the previous (coarser) scale: translation -> line.
    let mut open: BTreeMap<usize, usize> = BTreeMap::new();
    for j in (0..n_scales).rev() {
        let tol = c.scale((j + 1).min(n_scales - 1)) / c.dt();
        // end translation -> (distance, claimant position in per_scale[j])
        let mut claims: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for (k, p) in per_scale[j].iter().enumerate() {
            let nearest = open
                .keys()
                .map(|&e| (p.i.abs_diff(e), e))
                .filter(|&(d, _)| d as f64 <= tol)
                .min();
            if let Some((d, e)) = nearest {
                match claims.get(&e) {
                    Some(&(best, _)) if best <= d => {}
                    _ => {
                        claims.insert(e, (d, k));
                    }
                }
            }
        }
        let mut next = BTreeMap::new();
        let mut used = vec![false; per_scale[j].len()];
        for (e, (_, k)) in claims {
            let line = open[&e];
            lines[line].push(per_scale[j][k]);
            next.insert(per_scale[j][k].i, line);
            used[k] = true;
        }
        for (k, p) in per_scale[j].iter().enumerate() {
            if !used[k] {
                lines.push(vec![*p]);
                next.insert(p.i, lines.len() - 1);
            }
        }
        open = next;
    }

    let lines = lines
        .into_iter()
        .map(|mut l| {
            l.reverse();
            MaximaLine::new(l)
        })
        .collect();
    MaximaSet {
        points: per_scale.into_iter().flatten().collect(),
        lines,
    }
}
