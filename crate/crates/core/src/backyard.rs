//! Overflow store for bumped entries.

use std::collections::HashMap;

use crate::hash::BuildKeyHasher;

/// Unordered key/value map with an index from home block to the keys it
/// holds, so a single block's bumped keys can be found without a full scan.
#[derive(Debug, Clone, Default)]
pub(crate) struct Backyard {
    entries: HashMap<u64, u64, BuildKeyHasher>,
    by_block: HashMap<usize, Vec<u64>, BuildKeyHasher>,
}

impl Backyard {
    pub(crate) fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub(crate) fn get(&self, key: u64) -> Option<u64> {
        self.entries.get(&key).copied()
    }

    pub(crate) fn get_mut(&mut self, key: u64) -> Option<&mut u64> {
        self.entries.get_mut(&key)
    }

    /// Caller guarantees `key` is not present.
    pub(crate) fn insert_new(&mut self, key: u64, value: u64, home: usize) {
        let prev = self.entries.insert(key, value);
        debug_assert!(prev.is_none());
        self.by_block.entry(home).or_default().push(key);
    }

    pub(crate) fn remove(&mut self, key: u64, home: usize) -> Option<u64> {
        let value = self.entries.remove(&key)?;
        let keys = self
            .by_block
            .get_mut(&home)
            .expect("backyard index out of sync");
        let pos = keys
            .iter()
            .position(|&k| k == key)
            .expect("backyard index out of sync");
        keys.swap_remove(pos);
        if keys.is_empty() {
            self.by_block.remove(&home);
        }
        Some(value)
    }

    pub(crate) fn keys_of_block(&self, home: usize) -> &[u64] {
        self.by_block.get(&home).map_or(&[], Vec::as_slice)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub(crate) fn indexed(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.by_block
            .iter()
            .flat_map(|(&home, keys)| keys.iter().map(move |&k| (home, k)))
    }

    pub(crate) fn index_len(&self) -> usize {
        self.by_block.values().map(Vec::len).sum()
    }

    /// Empties the store, returning every entry with its home block.
    pub(crate) fn drain(&mut self) -> Vec<(usize, u64, u64)> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (home, keys) in self.by_block.drain() {
            for key in keys {
                out.push((home, key, self.entries[&key]));
            }
        }
        self.entries.clear();
        out
    }
}
