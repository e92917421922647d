//! Seeded random draws of strategies, games and mappings.
//!
//! Strategy angles are drawn from the uniform product measure on the
//! `(θ, α, β)` box, not the Haar measure.

use std::f64::consts::{PI, TAU};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ewl::StrategySpace;
use crate::game::{ClassicalGame, GameMapping};
use crate::linalg::SU2Params;

/// The generator every seeded routine in the crate uses.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform draw from `space`; frozen angles are exactly zero.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R, space: StrategySpace) -> SU2Params {
    let theta = rng.gen_range(0.0..=PI);
    let alpha = if space.alpha_free() { rng.gen_range(0.0..TAU) } else { 0.0 };
    let beta = if space.beta_free() { rng.gen_range(0.0..TAU) } else { 0.0 };
    SU2Params::new(theta, alpha, beta).expect("sampled angles are in range")
}

pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, spaces: &[StrategySpace]) -> Vec<SU2Params> {
    spaces.iter().map(|&s| random_params(rng, s)).collect()
}

/// A game of the given shape with integer payoffs drawn from `lo..=hi`.
pub fn random_integer_game<R: Rng + ?Sized>(rng: &mut R, shape: &[usize], lo: i32, hi: i32) -> ClassicalGame {
    let n = shape.len();
    ClassicalGame::from_fn(ClassicalGame::default_labels(shape), |_| {
        (0..n).map(|_| f64::from(rng.gen_range(lo..=hi))).collect()
    })
    .expect("random game is well formed")
}

/// A game of the given shape with real payoffs drawn uniformly from `[lo, hi)`.
pub fn random_real_game<R: Rng + ?Sized>(rng: &mut R, shape: &[usize], lo: f64, hi: f64) -> ClassicalGame {
    let n = shape.len();
    ClassicalGame::from_fn(ClassicalGame::default_labels(shape), |_| (0..n).map(|_| rng.gen_range(lo..hi)).collect())
        .expect("random game is well formed")
}

/// A uniformly random mapping among those that fit games of `shape` onto
/// games of the same shape.
pub fn random_mapping<R: Rng + ?Sized>(rng: &mut R, shape: &[usize]) -> GameMapping {
    let n = shape.len();
    loop {
        let mut eta: Vec<usize> = (0..n).collect();
        eta.shuffle(rng);
        if (0..n).any(|i| shape[eta[i]] != shape[i]) {
            continue;
        }
        let phi = shape
            .iter()
            .map(|&k| {
                let mut p: Vec<usize> = (0..k).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        return GameMapping::new(eta, phi).expect("shuffled permutations are bijections");
    }
}
