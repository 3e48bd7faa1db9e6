//! Deterministic seed derivation.
//!
//! Every random choice in the engine takes its generator from a sub-seed
//! `derive(master, path)`, so results depend only on the master seed and on
//! the logical position of the choice, never on evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(master), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream tags keep unrelated consumers of one master seed apart.
pub mod stream {
    pub const GENERATOR: u64 = 1;
    pub const LINEAR_FORM: u64 = 2;
    pub const MULTIPLIER: u64 = 3;
    pub const COORDINATES: u64 = 4;
    pub const POINTS: u64 = 5;
    pub const SECTION: u64 = 6;
    pub const INSTANCE: u64 = 7;
}
