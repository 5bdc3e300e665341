//! Seed plumbing. Every stochastic operation takes an explicit 64-bit seed;
//! internally we stretch it into a ChaCha8 stream and derive sub-seeds with
//! splitmix64 so that independent stages never share a stream.

use rand_chacha::rand_core::SeedableRng;

pub type Rng = rand_chacha::ChaCha8Rng;

/// Build the crate-wide RNG from a bare seed.
pub fn rng_from_seed(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// splitmix64 finalizer (Steele, Lea, Flood 2014). Used as a mixing function,
/// not as a stream generator.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive an independent sub-seed for a tagged stage of a computation.
#[inline]
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    splitmix64(seed ^ splitmix64(tag))
}

/// Deterministic per-replicate seed for ensemble runs: a function of
/// (master seed, grid index, replicate index) only, so replicates can run
/// in any order or thread.
#[inline]
pub fn replicate_seed(master_seed: u64, grid_index: u64, replicate: u64) -> u64 {
    splitmix64(derive_seed(master_seed, grid_index.wrapping_mul(0x517c_c1b7_2722_0a95)) ^ splitmix64(replicate))
}
