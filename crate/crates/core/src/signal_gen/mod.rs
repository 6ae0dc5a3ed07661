//! Seeded generators for the test signals: IFS chaos-game point clouds,
//! fractional Brownian motion, the cusp-and-step test function, the
//! chirp-with-jump signal, and additive Gaussian noise.
//!
//! Every generator draws from its own ChaCha8 stream seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`, so outputs are reproducible byte for
//! byte across platforms and independent of any shared state.

mod fbm;
mod ifs;
mod synthetic;

pub use fbm::{gen_fbm, synthesize_fbm, FbmParams, FbmSample};
pub use ifs::{
    barnsley_tree_model, chaos_game, chaos_game_from, AffineMap, IfsModel, PointCloud,
    DEFAULT_BURN_IN,
};
pub use synthetic::{
    add_noise, gen_chirp_jump, gen_eq11, unit_grid, NoiseSpec, CHIRP_CUSP_AT, CHIRP_JUMP_AT,
    CHIRP_JUMP_SIZE, MIN_SYNTHETIC_LEN,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
