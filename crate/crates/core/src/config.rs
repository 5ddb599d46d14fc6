//! Hyperparameters of a slick table.

use std::fmt;

use thiserror::Error;

/// A constraint on [`SlickConfig`] that a candidate configuration violates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("block size must be at least 1")]
    ZeroBlockSize,
    #[error("sliding block size {sliding_block_size} is smaller than block size {block_size}")]
    SlidingBlockTooSmall {
        block_size: usize,
        sliding_block_size: usize,
    },
    #[error(
        "sliding block size {sliding_block_size} exceeds block size plus both offsets ({reach})"
    )]
    SlidingBlockUnreachable {
        sliding_block_size: usize,
        reach: usize,
    },
    #[error("max threshold must be at least 1")]
    ZeroMaxThreshold,
    #[error("capacity {capacity} is smaller than block size {block_size}")]
    CapacityTooSmall { capacity: usize, block_size: usize },
    #[error(
        "last block would start {base_extent} slots wide, above the sliding block size {sliding_block_size}"
    )]
    TrailingBlockTooWide {
        base_extent: usize,
        sliding_block_size: usize,
    },
    #[error("parameter {name} = {value} does not fit the table's integer metadata")]
    OutOfRange { name: &'static str, value: usize },
}

/// All tunables of a [`SlickTable`](crate::SlickTable).
///
/// `block_size` is the nominal width of each block, `sliding_block_size` the
/// widest a block may become after boundaries move, `max_offset` how far a
/// block boundary may drift from its nominal position and `max_threshold` the
/// number of priority levels a key can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlickConfig {
    pub block_size: usize,
    pub sliding_block_size: usize,
    pub max_offset: usize,
    pub max_threshold: usize,
    pub capacity: usize,
    pub seed: u64,
}

impl SlickConfig {
    /// The default shape for a given block size: `B̂ = 2B`, `ô = t̂ = B`.
    pub fn with_block_size(block_size: usize, capacity: usize) -> Self {
        SlickConfig {
            block_size,
            sliding_block_size: 2 * block_size,
            max_offset: block_size,
            max_threshold: block_size,
            capacity,
            seed: 0,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn num_blocks(&self) -> usize {
        self.capacity / self.block_size.max(1)
    }

    /// Checks every constraint and reports the first one that fails.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let b = self.block_size;
        if b == 0 {
            return Err(ConfigError::ZeroBlockSize);
        }
        if self.sliding_block_size < b {
            return Err(ConfigError::SlidingBlockTooSmall {
                block_size: b,
                sliding_block_size: self.sliding_block_size,
            });
        }
        let reach = b.saturating_add(self.max_offset.saturating_mul(2));
        if self.sliding_block_size > reach {
            return Err(ConfigError::SlidingBlockUnreachable {
                sliding_block_size: self.sliding_block_size,
                reach,
            });
        }
        if self.max_threshold == 0 {
            return Err(ConfigError::ZeroMaxThreshold);
        }
        if self.capacity < b {
            return Err(ConfigError::CapacityTooSmall {
                capacity: self.capacity,
                block_size: b,
            });
        }
        let base_extent = b + self.capacity % b;
        if base_extent > self.sliding_block_size {
            return Err(ConfigError::TrailingBlockTooWide {
                base_extent,
                sliding_block_size: self.sliding_block_size,
            });
        }
        for (name, value) in [
            ("max_offset", self.max_offset),
            ("max_threshold", self.max_threshold),
            ("sliding_block_size", self.sliding_block_size),
        ] {
            if value > i32::MAX as usize {
                return Err(ConfigError::OutOfRange { name, value });
            }
        }
        if self.num_blocks() > u32::MAX as usize {
            return Err(ConfigError::OutOfRange {
                name: "capacity",
                value: self.capacity,
            });
        }
        Ok(())
    }

    /// Width in bits of one block's metadata if offset and threshold were
    /// packed: `ceil(log2(2ô+1)) + ceil(log2(t̂+1))`.
    pub fn metadata_bits_per_block(&self) -> u64 {
        ceil_log2(2 * self.max_offset as u64 + 1) + ceil_log2(self.max_threshold as u64 + 1)
    }

    /// Label in the form `B_B̂_ô_t̂`, with concrete numbers.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SlickConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{}_{}_{}",
            self.block_size, self.sliding_block_size, self.max_offset, self.max_threshold
        )
    }
}

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        u64::from(64 - (x - 1).leading_zeros())
    }
}
