//! Deterministic per-trial random streams.
//!
//! Every trial of an experiment draws from its own generator, seeded with
//! `stream_seed(master, i)`. The mixing function is the SplitMix64 finalizer
//! applied to `master` and to `i` separately, so streams for different
//! indices (or masters) are decorrelated and any single trial can be
//! replayed from `(master, i)` alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere in the library.
pub type Rng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function (Stafford variant 13).
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th stream derived from `master`.
pub fn stream_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(GOLDEN) ^ mix64(index.wrapping_mul(GOLDEN).wrapping_add(1)))
}

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
