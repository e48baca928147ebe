//! Seeded, platform-independent randomness.
//!
//! Every randomized path in the crate draws from [`SplitMix64`], whose output
//! depends only on the 64-bit seed. Independent sub-streams for trials and
//! restarts come from [`derive_seed`].

use rand::{RngCore, SeedableRng};
pub use rand_xoshiro::SplitMix64;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Generator whose state is exactly `seed`.
pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Sub-seed for stream `index` under `seed`. Distinct indices give distinct
/// sub-seeds for a fixed `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    seeded(seed ^ index.wrapping_mul(GOLDEN_GAMMA)).next_u64()
}
