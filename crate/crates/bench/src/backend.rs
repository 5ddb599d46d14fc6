//! The tables under test, behind one interface.

use std::collections::{BTreeMap, HashMap};

use slick_core::{CleaningPolicy, SlickConfig, SlickTable};

pub trait Backend {
    fn name(&self) -> &'static str;
    /// Configuration label; empty for the baselines.
    fn label(&self) -> String {
        String::new()
    }
    fn insert(&mut self, key: u64, value: u64);
    fn get(&self, key: u64) -> Option<u64>;
    /// `None` when the backend cannot delete.
    fn delete(&mut self, key: u64) -> Option<bool>;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// `(backyard_len, metadata_bits)` for slick tables.
    fn occupancy(&self) -> Option<(u64, u64)> {
        None
    }
}

pub struct SlickBackend {
    table: SlickTable,
    cleaning: CleaningPolicy,
}

impl SlickBackend {
    pub fn new(
        config: SlickConfig,
        cleaning: CleaningPolicy,
    ) -> Result<Self, slick_core::ConfigError> {
        Ok(SlickBackend {
            table: SlickTable::new(config)?,
            cleaning,
        })
    }

    pub fn table(&self) -> &SlickTable {
        &self.table
    }
}

impl Backend for SlickBackend {
    fn name(&self) -> &'static str {
        "slick"
    }

    fn label(&self) -> String {
        self.table.config().label()
    }

    #[inline]
    fn insert(&mut self, key: u64, value: u64) {
        self.table.try_insert(key, value);
    }

    #[inline]
    fn get(&self, key: u64) -> Option<u64> {
        self.table.get(key)
    }

    #[inline]
    fn delete(&mut self, key: u64) -> Option<bool> {
        Some(self.table.delete_entry(key, self.cleaning))
    }

    fn len(&self) -> usize {
        self.table.len()
    }

    fn occupancy(&self) -> Option<(u64, u64)> {
        let s = self.table.stats();
        Some((s.backyard_len as u64, s.metadata_bits_nominal))
    }
}

pub struct UnorderedMap(HashMap<u64, u64>);

impl UnorderedMap {
    pub fn with_capacity(capacity: usize) -> Self {
        UnorderedMap(HashMap::with_capacity(capacity))
    }
}

impl Backend for UnorderedMap {
    fn name(&self) -> &'static str {
        "unordered_map"
    }

    #[inline]
    fn insert(&mut self, key: u64, value: u64) {
        self.0.insert(key, value);
    }

    #[inline]
    fn get(&self, key: u64) -> Option<u64> {
        self.0.get(&key).copied()
    }

    #[inline]
    fn delete(&mut self, key: u64) -> Option<bool> {
        Some(self.0.remove(&key).is_some())
    }

    fn len(&self) -> usize {
        self.0.len()
    }
}

#[derive(Default)]
pub struct OrderedMap(BTreeMap<u64, u64>);

impl Backend for OrderedMap {
    fn name(&self) -> &'static str {
        "ordered_map"
    }

    #[inline]
    fn insert(&mut self, key: u64, value: u64) {
        self.0.insert(key, value);
    }

    #[inline]
    fn get(&self, key: u64) -> Option<u64> {
        self.0.get(&key).copied()
    }

    #[inline]
    fn delete(&mut self, key: u64) -> Option<bool> {
        Some(self.0.remove(&key).is_some())
    }

    fn len(&self) -> usize {
        self.0.len()
    }
}
