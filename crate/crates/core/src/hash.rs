//! Key hashing.
//!
//! Every key is mapped to a home block and a priority by a fixed
//! splitmix64-based pipeline, so that occupancy counts are reproducible
//! across runs, machines and implementations:
//!
//! ```text
//! h1       = mix64(key ^ seed)
//! h2       = mix64(h1 + GOLDEN)
//! home     = (h1 * m) >> 64          (multiply-high, "fastrange")
//! priority = h2 mod t̂
//! ```

use std::hash::{BuildHasherDefault, Hasher};

use crate::SlickConfig;

pub const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maps a uniformly distributed `hash` onto `0..n` without division.
#[inline]
pub fn fastrange(hash: u64, n: u64) -> u64 {
    ((u128::from(hash) * u128::from(n)) >> 64) as u64
}

/// A splitmix64 generator. Outputs of one stream are pairwise distinct for
/// the first 2^64 draws because `mix64` is a bijection.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }
}

impl Iterator for SplitMix64 {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.next_u64())
    }
}

/// Where a key lives: its home block and its bump priority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HashedKey {
    pub home_block: usize,
    pub priority: u32,
}

/// Precomputed hashing parameters of a table.
#[derive(Debug, Clone, Copy)]
pub(crate) struct KeyHashing {
    seed: u64,
    num_blocks: u64,
    max_threshold: u64,
}

impl KeyHashing {
    pub(crate) fn new(config: &SlickConfig) -> Self {
        KeyHashing {
            seed: config.seed,
            num_blocks: config.num_blocks() as u64,
            max_threshold: config.max_threshold as u64,
        }
    }

    #[inline]
    pub(crate) fn hash(&self, key: u64) -> HashedKey {
        let h1 = mix64(key ^ self.seed);
        let h2 = mix64(h1.wrapping_add(GOLDEN));
        HashedKey {
            home_block: fastrange(h1, self.num_blocks) as usize,
            priority: (h2 % self.max_threshold) as u32,
        }
    }
}

/// Hashes `key` for a table built from `config`, using `seed` in place of
/// `config.seed`.
pub fn hash_key(key: u64, seed: u64, config: &SlickConfig) -> HashedKey {
    KeyHashing::new(&SlickConfig { seed, ..*config }).hash(key)
}

/// Hasher for the backyard map. Keys are already `u64`, one `mix64` round is
/// all the scrambling they need.
#[derive(Debug, Default, Clone, Copy)]
pub struct KeyHasher {
    state: u64,
}

impl Hasher for KeyHasher {
    #[inline]
    fn finish(&self) -> u64 {
        mix64(self.state)
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.state = (self.state.rotate_left(8) ^ u64::from(b)).wrapping_mul(GOLDEN);
        }
    }

    #[inline]
    fn write_u64(&mut self, i: u64) {
        self.state ^= i;
    }
}

pub type BuildKeyHasher = BuildHasherDefault<KeyHasher>;
