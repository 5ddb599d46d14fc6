//! Helpers for scripting mini-instances in unit tests.

use crate::hash::SplitMix64;
use crate::table::SlickTable;

/// `n` keys that are not in `t`, hash to `home` and (optionally) have the
/// given priority.
pub(crate) fn keys_for(t: &SlickTable, home: usize, priority: Option<u32>, n: usize) -> Vec<u64> {
    let present: Vec<u64> = t.iter().map(|(k, _)| k).collect();
    SplitMix64::new(0xC0FFEE ^ home as u64)
        .filter(|&k| {
            let h = t.hash(k);
            h.home_block == home
                && priority.is_none_or(|p| p == h.priority)
                && !present.contains(&k)
        })
        .take(n)
        .collect()
}

/// `(key, home block)` for every main-table key, as the hash says it should be.
pub(crate) fn scan_memberships(t: &SlickTable) -> Vec<(u64, usize)> {
    let mut v: Vec<_> = t
        .iter()
        .filter(|&(k, _)| t.hash(k).priority >= t.meta(t.hash(k).home_block).threshold)
        .map(|(k, _)| (k, t.hash(k).home_block))
        .collect();
    v.sort_unstable();
    v
}

/// Locates each of `keys` by a linear scan over all occupied slots and maps
/// the slot back to a block by walking boundaries recomputed from raw
/// offsets. Keys that are nowhere in the main table are dropped.
pub(crate) fn brute_force_extents(t: &SlickTable, keys: &[u64]) -> Vec<(u64, usize)> {
    let cfg = t.config();
    let m = t.num_blocks();
    let boundary = |i: usize| -> usize {
        match i {
            0 => 0,
            i if i == m => cfg.capacity,
            i => (i * cfg.block_size).wrapping_add_signed(t.meta(i).offset as isize),
        }
    };
    let mut occupied = vec![false; cfg.capacity];
    for i in 0..m {
        occupied[boundary(i)..boundary(i) + t.fill(i)].fill(true);
    }
    let mut out = Vec::new();
    for &k in keys {
        if let Some(slot) = (0..cfg.capacity).find(|&s| occupied[s] && t.slots[s].key == k) {
            let block = (0..m)
                .find(|&i| boundary(i) <= slot && slot < boundary(i + 1))
                .unwrap();
            out.push((k, block));
        }
    }
    out.sort_unstable();
    out
}
