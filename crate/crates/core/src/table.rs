use crate::backyard::Backyard;
use crate::config::{ConfigError, SlickConfig};
use crate::hash::{HashedKey, KeyHashing};
use crate::stats::TableStats;

/// Per-block metadata: how far the block's start boundary has drifted from
/// `i * B`, and the priority below which the block's keys live in the backyard.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct BlockMeta {
    pub offset: i32,
    pub threshold: u32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Entry {
    pub(crate) key: u64,
    pub(crate) value: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackyardReason {
    /// The key's priority was already below its block's threshold.
    BelowThreshold,
    /// The block was full and its threshold had to be raised past the key.
    ThresholdRaised,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    PlacedMain { block: usize, slot: usize },
    PlacedBackyard(BackyardReason),
    ReplacedExisting,
}

/// What a threshold raise did to a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct BumpReport {
    pub(crate) new_threshold: u32,
    pub(crate) evicted: usize,
    pub(crate) new_key_bumped: bool,
}

/// A fixed-capacity hash table of `u64 -> u64` built from sliding blocks.
///
/// Slots are split into `m = capacity / B` blocks. Each key hashes to a home
/// block and a priority. A block keeps its entries packed at the front of
/// its slot range; when it runs out of room it first tries to borrow a slot
/// from a nearby block by moving boundaries, and otherwise raises its
/// threshold, bumping every resident key with a lower priority into the
/// backyard. Lookups compare one priority against one threshold and then
/// consult exactly one of the two stores.
#[derive(Debug)]
pub struct SlickTable {
    pub(crate) config: SlickConfig,
    pub(crate) hashing: KeyHashing,
    pub(crate) num_blocks: usize,
    pub(crate) slots: Vec<Entry>,
    pub(crate) metas: Vec<BlockMeta>,
    pub(crate) fill: Vec<u32>,
    pub(crate) backyard: Backyard,
    pub(crate) main_len: usize,
    pub(crate) bump_events: u64,
    pub(crate) max_abs_offset_seen: u32,
    pub(crate) over_arc_guard: bool,
    #[cfg(feature = "test-hooks")]
    pub(crate) probes: crate::hooks::RoutingProbes,
}

impl SlickTable {
    pub fn new(config: SlickConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let num_blocks = config.num_blocks();
        Ok(SlickTable {
            config,
            hashing: KeyHashing::new(&config),
            num_blocks,
            slots: vec![Entry::default(); config.capacity],
            metas: vec![BlockMeta::default(); num_blocks],
            fill: vec![0; num_blocks],
            backyard: Backyard::default(),
            main_len: 0,
            bump_events: 0,
            max_abs_offset_seen: 0,
            over_arc_guard: true,
            #[cfg(feature = "test-hooks")]
            probes: Default::default(),
        })
    }

    pub fn config(&self) -> &SlickConfig {
        &self.config
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn len(&self) -> usize {
        self.main_len + self.backyard.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn main_len(&self) -> usize {
        self.main_len
    }

    pub fn backyard_len(&self) -> usize {
        self.backyard.len()
    }

    /// Entries bumped into the backyard by threshold raises, including
    /// incoming keys that were diverted by the raise.
    pub fn bump_events(&self) -> u64 {
        self.bump_events
    }

    pub fn meta(&self, block: usize) -> BlockMeta {
        self.metas[block]
    }

    pub fn fill(&self, block: usize) -> usize {
        self.fill[block] as usize
    }

    pub fn hash(&self, key: u64) -> HashedKey {
        self.hashing.hash(key)
    }

    #[inline]
    pub(crate) fn start(&self, block: usize) -> usize {
        if block == 0 {
            0
        } else {
            (block * self.config.block_size).wrapping_add_signed(self.metas[block].offset as isize)
        }
    }

    #[inline]
    pub(crate) fn end(&self, block: usize) -> usize {
        if block + 1 == self.num_blocks {
            self.config.capacity
        } else {
            self.start(block + 1)
        }
    }

    #[inline]
    pub(crate) fn extent(&self, block: usize) -> usize {
        self.end(block).wrapping_sub(self.start(block))
    }

    /// Half-open slot range `[start, end)` currently owned by `block`.
    pub fn block_extent(&self, block: usize) -> (usize, usize) {
        (self.start(block), self.end(block))
    }

    pub fn get(&self, key: u64) -> Option<u64> {
        let h = self.hashing.hash(key);
        if h.priority < self.metas[h.home_block].threshold {
            #[cfg(feature = "test-hooks")]
            self.probes.backyard();
            self.backyard.get(key)
        } else {
            #[cfg(feature = "test-hooks")]
            self.probes.main();
            let start = self.start(h.home_block);
            let fill = self.fill[h.home_block] as usize;
            self.slots[start..start + fill]
                .iter()
                .find(|e| e.key == key)
                .map(|e| e.value)
        }
    }

    pub fn contains(&self, key: u64) -> bool {
        self.get(key).is_some()
    }

    pub(crate) fn find_main_slot(&self, h: HashedKey, key: u64) -> Option<usize> {
        let start = self.start(h.home_block);
        let fill = self.fill[h.home_block] as usize;
        self.slots[start..start + fill]
            .iter()
            .position(|e| e.key == key)
            .map(|i| start + i)
    }

    /// Inserts or replaces `key`. Never fails: when a block can neither grow
    /// nor make room, the backyard absorbs the overflow.
    pub fn try_insert(&mut self, key: u64, value: u64) -> InsertOutcome {
        let h = self.hashing.hash(key);
        if h.priority < self.metas[h.home_block].threshold {
            if let Some(v) = self.backyard.get_mut(key) {
                *v = value;
                return InsertOutcome::ReplacedExisting;
            }
        } else if let Some(slot) = self.find_main_slot(h, key) {
            self.slots[slot].value = value;
            return InsertOutcome::ReplacedExisting;
        }
        self.insert_absent(h, key, value)
    }

    /// Insertion path for a key known to be absent from both stores.
    pub(crate) fn insert_absent(&mut self, h: HashedKey, key: u64, value: u64) -> InsertOutcome {
        let b = h.home_block;
        if h.priority < self.metas[b].threshold {
            self.backyard.insert_new(key, value, b);
            return InsertOutcome::PlacedBackyard(BackyardReason::BelowThreshold);
        }
        if (self.fill[b] as usize) < self.extent(b) || self.slide_any(b) {
            let slot = self.push_main(b, key, value);
            return InsertOutcome::PlacedMain { block: b, slot };
        }
        let report = self.raise_threshold_and_bump(b, h.priority);
        if report.new_key_bumped {
            self.backyard.insert_new(key, value, b);
            self.bump_events += 1;
            InsertOutcome::PlacedBackyard(BackyardReason::ThresholdRaised)
        } else {
            let slot = self.push_main(b, key, value);
            InsertOutcome::PlacedMain { block: b, slot }
        }
    }

    /// Appends to block `b`; the caller has made sure there is a free slot.
    #[inline]
    pub(crate) fn push_main(&mut self, b: usize, key: u64, value: u64) -> usize {
        let slot = self.start(b) + self.fill[b] as usize;
        debug_assert!(slot < self.end(b));
        self.slots[slot] = Entry { key, value };
        self.fill[b] += 1;
        self.main_len += 1;
        slot
    }

    /// Raises the threshold of the full block `b` to the smallest value that
    /// either evicts a resident or exceeds the incoming priority, and moves
    /// every resident below the new threshold to the backyard.
    pub(crate) fn raise_threshold_and_bump(&mut self, b: usize, priority: u32) -> BumpReport {
        let start = self.start(b);
        let mut fill = self.fill[b] as usize;
        let min_resident = self.slots[start..start + fill]
            .iter()
            .map(|e| self.hashing.hash(e.key).priority)
            .min()
            .unwrap_or(u32::MAX);
        let new_threshold = min_resident.min(priority) + 1;
        debug_assert!(new_threshold as usize <= self.config.max_threshold);
        debug_assert!(new_threshold > self.metas[b].threshold);

        let mut evicted = 0;
        let mut i = 0;
        while i < fill {
            let e = self.slots[start + i];
            if self.hashing.hash(e.key).priority < new_threshold {
                self.backyard.insert_new(e.key, e.value, b);
                fill -= 1;
                self.slots[start + i] = self.slots[start + fill];
                evicted += 1;
            } else {
                i += 1;
            }
        }
        self.fill[b] = fill as u32;
        self.main_len -= evicted;
        self.metas[b].threshold = new_threshold;
        self.bump_events += evicted as u64;
        BumpReport {
            new_threshold,
            evicted,
            new_key_bumped: priority < new_threshold,
        }
    }

    /// Entries stored in block `block`, in slot order.
    pub fn block_entries(&self, block: usize) -> impl Iterator<Item = (u64, u64)> + '_ {
        let start = self.start(block);
        self.slots[start..start + self.fill[block] as usize]
            .iter()
            .map(|e| (e.key, e.value))
    }

    pub fn backyard_entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.backyard.iter()
    }

    /// Every stored `(key, value)`, main table first, then the backyard.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.num_blocks)
            .flat_map(move |b| {
                let start = self.start(b);
                self.slots[start..start + self.fill[b] as usize].iter()
            })
            .map(|e| (e.key, e.value))
            .chain(self.backyard.iter())
    }

    pub fn stats(&self) -> TableStats {
        TableStats::collect(self)
    }
}
