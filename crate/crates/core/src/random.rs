//! Seeded generation of random valid maps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constellation::{Constellation, Mode};
use crate::permutation::Permutation;

/// Environment variable read by [`seed_from_env`].
pub const SEED_VAR: &str = "MAPFORGE_TEST_SEED";

pub const DEFAULT_SEED: u64 = 0x6d61_7066_6f72_6765;

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_zero_based_unchecked(images)
}

/// Uniform fixed-point-free involution on `n` points; `n` must be even.
pub fn random_involution<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    assert!(
        n.is_multiple_of(2),
        "a fixed-point-free involution needs an even degree"
    );
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let mut images = vec![0; n];
    for pair in points.chunks(2) {
        images[pair[0]] = pair[1];
        images[pair[1]] = pair[0];
    }
    Permutation::from_zero_based_unchecked(images)
}

/// Random map on exactly `n` darts (even, positive), resampled until connected.
pub fn random_map<R: Rng>(rng: &mut R, n: usize) -> Constellation {
    assert!(
        n > 0 && n.is_multiple_of(2),
        "maps need a positive even number of darts"
    );
    loop {
        let sigma = random_permutation(rng, n);
        let alpha = random_involution(rng, n);
        if let Ok(c) = Constellation::from_sigma_alpha(sigma, alpha, Mode::Map) {
            return c;
        }
    }
}

/// Random map with an even dart count drawn from `2..=max_darts`.
pub fn random_map_up_to<R: Rng>(rng: &mut R, max_darts: usize) -> Constellation {
    let n = 2 * rng.random_range(1..=max_darts / 2);
    random_map(rng, n)
}
