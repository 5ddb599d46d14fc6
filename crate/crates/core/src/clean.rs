//! Deletion and backyard cleaning.
//!
//! Deleting never moves a boundary and never lowers a threshold on its own;
//! only a cleaning pass pulls bumped entries back into the main table.

use crate::table::SlickTable;

/// Cleaning pass run after every successful [`SlickTable::delete_entry`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum CleaningPolicy {
    #[default]
    None,
    /// Whenever the main table has at least as many free slots as the
    /// backyard has entries, reinsert the whole backyard. Cost grows with the
    /// backyard, so this is meant for small tables only.
    NaiveFull,
    /// Lower the threshold of the deleted key's home block one level at a
    /// time while the freed room can take every backyard key of that level.
    Targeted,
}

/// An explicit cleaning request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clean {
    None,
    NaiveFull,
    Targeted(usize),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CleanReport {
    /// Net number of entries that left the backyard.
    pub moved: usize,
}

impl SlickTable {
    /// Removes `key`, then runs `policy`. Returns whether the key was present.
    pub fn delete_entry(&mut self, key: u64, policy: CleaningPolicy) -> bool {
        let h = self.hashing.hash(key);
        let b = h.home_block;
        if h.priority < self.metas[b].threshold {
            if self.backyard.remove(key, b).is_none() {
                return false;
            }
        } else {
            let Some(slot) = self.find_main_slot(h, key) else {
                return false;
            };
            let last = self.start(b) + self.fill[b] as usize - 1;
            self.slots[slot] = self.slots[last];
            self.fill[b] -= 1;
            self.main_len -= 1;
        }
        let request = match policy {
            CleaningPolicy::None => Clean::None,
            CleaningPolicy::NaiveFull => Clean::NaiveFull,
            CleaningPolicy::Targeted => Clean::Targeted(b),
        };
        self.clean_backyard(request);
        true
    }

    pub fn clean_backyard(&mut self, request: Clean) -> CleanReport {
        match request {
            Clean::None => CleanReport::default(),
            Clean::NaiveFull => self.clean_naive_full(),
            Clean::Targeted(b) => self.clean_targeted(b),
        }
    }

    fn clean_naive_full(&mut self) -> CleanReport {
        let before = self.backyard.len();
        let free = self.config.capacity - self.main_len;
        if before == 0 || free < before {
            return CleanReport::default();
        }
        let mut pending = self.backyard.drain();
        pending.sort_unstable();
        for &(home, _, _) in &pending {
            self.metas[home].threshold = 0;
        }
        for (_, key, value) in pending {
            let h = self.hashing.hash(key);
            self.insert_absent(h, key, value);
        }
        CleanReport {
            moved: before.saturating_sub(self.backyard.len()),
        }
    }

    fn clean_targeted(&mut self, b: usize) -> CleanReport {
        let mut moved = 0;
        let mut candidates = Vec::new();
        loop {
            let threshold = self.metas[b].threshold;
            if threshold == 0 {
                break;
            }
            let free = self.extent(b) - self.fill[b] as usize;
            if free == 0 {
                break;
            }
            candidates.clear();
            candidates.extend(
                self.backyard
                    .keys_of_block(b)
                    .iter()
                    .copied()
                    .filter(|&k| self.hashing.hash(k).priority == threshold - 1),
            );
            if candidates.is_empty() || candidates.len() > free {
                break;
            }
            for &key in &candidates {
                let value = self.backyard.remove(key, b).expect("indexed key missing");
                self.push_main(b, key, value);
            }
            self.metas[b].threshold = threshold - 1;
            moved += candidates.len();
        }
        CleanReport { moved }
    }
}
