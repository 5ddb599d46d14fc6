//! Full-scan consistency check.

use std::collections::HashSet;
use std::fmt;

use crate::table::SlickTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Invariant {
    Membership,
    Geometry,
    Conservation,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Membership => "MEMBERSHIP",
            Invariant::Geometry => "GEOMETRY",
            Invariant::Conservation => "CONSERVATION",
        })
    }
}

/// The first broken invariant found by [`SlickTable::check_invariants`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{invariant}: {detail}")]
pub struct InvariantViolation {
    pub invariant: Invariant,
    pub detail: String,
}

fn fail(invariant: Invariant, detail: String) -> Result<(), InvariantViolation> {
    Err(InvariantViolation { invariant, detail })
}

impl SlickTable {
    /// Re-derives every structural property from scratch. Runs in
    /// `O(capacity + backyard)`; meant for tests and debugging.
    pub fn check_invariants(&self) -> Result<(), InvariantViolation> {
        self.check_geometry()?;
        self.check_membership()?;
        self.check_conservation()
    }

    fn check_geometry(&self) -> Result<(), InvariantViolation> {
        use Invariant::Geometry;
        let max_offset = self.config.max_offset as i64;
        if self.metas[0].offset != 0 {
            return fail(
                Geometry,
                format!("block 0 has offset {}", self.metas[0].offset),
            );
        }
        let mut covered = 0usize;
        for i in 0..self.num_blocks {
            let offset = i64::from(self.metas[i].offset);
            if offset.abs() > max_offset {
                return fail(
                    Geometry,
                    format!("block {i} offset {offset} exceeds ±{max_offset}"),
                );
            }
            let start = (i * self.config.block_size) as i64 + offset;
            let start = if i == 0 { 0 } else { start };
            let end = if i + 1 == self.num_blocks {
                self.config.capacity as i64
            } else {
                ((i + 1) * self.config.block_size) as i64 + i64::from(self.metas[i + 1].offset)
            };
            if start != covered as i64 {
                return fail(
                    Geometry,
                    format!("block {i} starts at {start}, expected {covered}"),
                );
            }
            if end < start {
                return fail(
                    Geometry,
                    format!("block {i} has negative extent [{start}, {end})"),
                );
            }
            let extent = (end - start) as usize;
            if extent == 0 {
                return fail(
                    Geometry,
                    format!("block {i} squished to zero extent at slot {start}"),
                );
            }
            if extent > self.config.sliding_block_size {
                return fail(
                    Geometry,
                    format!(
                        "block {i} extent {extent} exceeds {}",
                        self.config.sliding_block_size
                    ),
                );
            }
            let fill = self.fill[i] as usize;
            if fill > extent {
                return fail(
                    Geometry,
                    format!("block {i} fill {fill} exceeds extent {extent}"),
                );
            }
            covered = end as usize;
        }
        if covered != self.config.capacity {
            return fail(
                Geometry,
                format!(
                    "blocks cover {covered} slots, capacity is {}",
                    self.config.capacity
                ),
            );
        }
        Ok(())
    }

    fn check_membership(&self) -> Result<(), InvariantViolation> {
        use Invariant::Membership;
        for i in 0..self.num_blocks {
            let start = self.start(i);
            let threshold = self.metas[i].threshold;
            if threshold as usize > self.config.max_threshold {
                return fail(
                    Membership,
                    format!("block {i} threshold {threshold} above t̂"),
                );
            }
            for e in &self.slots[start..start + self.fill[i] as usize] {
                let h = self.hashing.hash(e.key);
                if h.home_block != i {
                    return fail(
                        Membership,
                        format!(
                            "key {:#x} stored in block {i}, home is {}",
                            e.key, h.home_block
                        ),
                    );
                }
                if h.priority < threshold {
                    return fail(
                        Membership,
                        format!(
                            "key {:#x} in block {i} has priority {} below threshold {threshold}",
                            e.key, h.priority
                        ),
                    );
                }
            }
        }
        for (key, _) in self.backyard.iter() {
            let h = self.hashing.hash(key);
            let threshold = self.metas[h.home_block].threshold;
            if h.priority >= threshold {
                return fail(
                    Membership,
                    format!(
                        "backyard key {key:#x} has priority {} at or above threshold {threshold} of block {}",
                        h.priority, h.home_block
                    ),
                );
            }
        }
        for (home, key) in self.backyard.indexed() {
            if self.hashing.hash(key).home_block != home {
                return fail(
                    Membership,
                    format!("backyard index files {key:#x} under block {home}"),
                );
            }
        }
        Ok(())
    }

    fn check_conservation(&self) -> Result<(), InvariantViolation> {
        use Invariant::Conservation;
        let filled: usize = self.fill.iter().map(|&f| f as usize).sum();
        if filled != self.main_len {
            return fail(
                Conservation,
                format!("fills sum to {filled}, main_len is {}", self.main_len),
            );
        }
        if self.backyard.index_len() != self.backyard.len() {
            return fail(
                Conservation,
                format!(
                    "backyard holds {} entries but its index {}",
                    self.backyard.len(),
                    self.backyard.index_len()
                ),
            );
        }
        let mut seen = HashSet::with_capacity(self.main_len);
        for i in 0..self.num_blocks {
            let start = self.start(i);
            for e in &self.slots[start..start + self.fill[i] as usize] {
                if !seen.insert(e.key) {
                    return fail(
                        Conservation,
                        format!("key {:#x} stored twice in main", e.key),
                    );
                }
            }
        }
        for (key, _) in self.backyard.iter() {
            if seen.contains(&key) {
                return fail(Conservation, format!("key {key:#x} in both stores"));
            }
        }
        Ok(())
    }
}
