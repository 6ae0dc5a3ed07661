use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;

use crate::error::{Error, Result};

/// Iterates discarded before recording when none is given.
pub const DEFAULT_BURN_IN: usize = 100;

/// `w(x) = [[a, b], [c, d]]·x + [e, f]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl AffineMap {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        Self { a, b, c, d, e, f }
    }

    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.a * p[0] + self.b * p[1] + self.e,
            self.c * p[0] + self.d * p[1] + self.f,
        ]
    }

    fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d, self.e, self.f]
            .iter()
            .all(|v| v.is_finite())
    }
}

/// Affine maps with selection probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct IfsModel {
    maps: Vec<AffineMap>,
    probs: Vec<f64>,
}

impl IfsModel {
    pub fn new(maps: Vec<AffineMap>, probs: Vec<f64>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidModel("at least one map is required".into()));
        }
        if maps.len() != probs.len() {
            return Err(Error::InvalidModel(format!(
                "{} maps but {} probabilities",
                maps.len(),
                probs.len()
            )));
        }
        if let Some(m) = maps.iter().position(|m| !m.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "map {} has a non-finite coefficient",
                m + 1
            )));
        }
        if let Some(p) = probs.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
            return Err(Error::InvalidModel(format!(
                "probability {p} is not positive"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidModel(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { maps, probs })
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// The four-map tree model with its selection probabilities.
pub fn barnsley_tree_model() -> IfsModel {
    IfsModel {
        maps: vec![
            AffineMap::new(0.0, 0.0, 0.0, 0.16, 0.0, -1.00),
            AffineMap::new(-0.85, -0.04, -0.04, 0.85, 0.0, 1.60),
            AffineMap::new(-0.20, 0.26, 0.23, 0.22, 0.0, 1.60),
            AffineMap::new(0.15, -0.28, 0.26, 0.24, 0.0, 0.22),
        ],
        probs: vec![0.01, 0.85, 0.07, 0.07],
    }
}

/// Chaos-game iterates after burn-in, with the map chosen at each kept step.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<[f64; 2]>,
    selections: Vec<usize>,
    seed: u64,
    burn_in: usize,
}

impl PointCloud {
    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    /// Index of the map applied to produce each recorded point.
    pub fn selections(&self) -> &[usize] {
        &self.selections
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn burn_in(&self) -> usize {
        self.burn_in
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(min, max)` corners of the axis-aligned bounding box.
    pub fn bounds(&self) -> Option<([f64; 2], [f64; 2])> {
        let first = *self.points.first()?;
        Some(self.points.iter().fold((first, first), |(lo, hi), p| {
            (
                [lo[0].min(p[0]), lo[1].min(p[1])],
                [hi[0].max(p[0]), hi[1].max(p[1])],
            )
        }))
    }
}

/// Runs the chaos game from the origin.
pub fn chaos_game(model: &IfsModel, n: usize, seed: u64, burn_in: usize) -> Result<PointCloud> {
    chaos_game_from(model, [0.0, 0.0], n, seed, burn_in)
}

/// Runs the chaos game from `start`, keeping `n` iterates after `burn_in`.
pub fn chaos_game_from(
    model: &IfsModel,
    start: [f64; 2],
    n: usize,
    seed: u64,
    burn_in: usize,
) -> Result<PointCloud> {
    // Revalidate: fields are private, but a model may come from anywhere.
    let model = IfsModel::new(model.maps.clone(), model.probs.clone())?;
    if n == 0 {
        return Err(Error::InvalidParameter(
            "point count must be at least 1".into(),
        ));
    }
    if !(start[0].is_finite() && start[1].is_finite()) {
        return Err(Error::InvalidParameter("start point must be finite".into()));
    }
    let pick = WeightedIndex::new(&model.probs).map_err(|e| Error::InvalidModel(e.to_string()))?;
    let mut rng = super::stream(seed);
    let mut x = start;
    let mut points = Vec::with_capacity(n);
    let mut selections = Vec::with_capacity(n);
    for step in 0..burn_in + n {
        let m = pick.sample(&mut rng);
        x = model.maps[m].apply(x);
        if step >= burn_in {
            points.push(x);
            selections.push(m);
        }
    }
    if points.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidModel("iterates diverged".into()));
    }
    Ok(PointCloud {
        points,
        selections,
        seed,
        burn_in,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_contraction_converges() {
        let model = IfsModel::new(
            vec![AffineMap::new(0.5, 0.0, 0.0, 0.5, 0.0, 0.0)],
            vec![1.0],
        )
        .unwrap();
        let cloud = chaos_game_from(&model, [1.0, 1.0], 3, 9, 0).unwrap();
        assert_eq!(cloud.points(), &[[0.5, 0.5], [0.25, 0.25], [0.125, 0.125]]);
    }

    #[test]
    fn barnsley_coefficients() {
        let m = barnsley_tree_model();
        assert_eq!(m.probs().iter().sum::<f64>(), 1.0);
        assert_eq!(m.maps()[1].a, -0.85);
        assert_eq!(m.maps()[0], AffineMap::new(0.0, 0.0, 0.0, 0.16, 0.0, -1.0));
        assert_eq!(
            m.maps()[3],
            AffineMap::new(0.15, -0.28, 0.26, 0.24, 0.0, 0.22)
        );
        assert!(IfsModel::new(m.maps().to_vec(), m.probs().to_vec()).is_ok());
    }

    #[test]
    fn invalid_models_rejected() {
        let map = AffineMap::new(0.5, 0.0, 0.0, 0.5, 0.0, 0.0);
        assert!(IfsModel::new(vec![], vec![]).is_err());
        assert!(IfsModel::new(vec![map], vec![0.9]).is_err());
        assert!(IfsModel::new(vec![map, map], vec![1.0, 0.0]).is_err());
        assert!(IfsModel::new(vec![map], vec![1.0, 0.0]).is_err());
        let bad = AffineMap::new(f64::NAN, 0.0, 0.0, 0.5, 0.0, 0.0);
        assert!(IfsModel::new(vec![bad], vec![1.0]).is_err());
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let m = barnsley_tree_model();
        let a = chaos_game(&m, 2000, 5, DEFAULT_BURN_IN).unwrap();
        let b = chaos_game(&m, 2000, 5, DEFAULT_BURN_IN).unwrap();
        let c = chaos_game(&m, 2000, 6, DEFAULT_BURN_IN).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.points(), c.points());
        assert_eq!(a.len(), 2000);
        assert_eq!(a.selections().len(), 2000);
    }

    #[test]
    fn burn_in_is_a_prefix_drop() {
        let m = barnsley_tree_model();
        let full = chaos_game(&m, 150, 3, 0).unwrap();
        let tail = chaos_game(&m, 50, 3, 100).unwrap();
        assert_eq!(&full.points()[100..], tail.points());
    }
}
