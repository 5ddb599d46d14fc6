//! Sliding block hashing.
//!
//! [`SlickTable`] is a fixed-capacity `u64 -> u64` hash table whose only
//! per-block metadata is a boundary offset and a bump threshold. Blocks keep
//! their entries packed, grow by sliding shared boundaries into neighbours
//! with spare room, and shed their lowest-priority keys into an overflow map
//! (the backyard) when they cannot grow. See the guide in `book/` for a walk
//! through each mechanism.
//!
//! ```
//! use slick_core::{CleaningPolicy, SlickConfig, SlickTable};
//!
//! let mut table = SlickTable::new(SlickConfig::with_block_size(10, 1_000)).unwrap();
//! table.try_insert(7, 70);
//! assert_eq!(table.get(7), Some(70));
//! assert!(table.delete_entry(7, CleaningPolicy::Targeted));
//! assert!(!table.contains(7));
//! ```

mod backyard;
mod clean;
mod config;
mod hash;
#[cfg(feature = "test-hooks")]
mod hooks;
mod invariants;
mod slide;
mod stats;
mod table;
#[cfg(test)]
mod test_support;

pub use clean::{Clean, CleanReport, CleaningPolicy};
pub use config::{ConfigError, SlickConfig};
pub use hash::{
    fastrange, hash_key, mix64, BuildKeyHasher, HashedKey, KeyHasher, SplitMix64, GOLDEN,
};
#[cfg(feature = "test-hooks")]
pub use hooks::RoutingProbes;
pub use invariants::{Invariant, InvariantViolation};
pub use stats::TableStats;
pub use table::{BackyardReason, BlockMeta, InsertOutcome, SlickTable};

// Code blocks in the guide run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/configuration.md")]
    mod configuration {}
    #[doc = include_str!("../../../book/src/hashing.md")]
    mod hashing {}
    #[doc = include_str!("../../../book/src/insertion.md")]
    mod insertion {}
    #[doc = include_str!("../../../book/src/backyard.md")]
    mod backyard {}
    #[doc = include_str!("../../../book/src/deletion.md")]
    mod deletion {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/benchmarking.md")]
    mod benchmarking {}
}
