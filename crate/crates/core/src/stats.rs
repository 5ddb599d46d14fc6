use crate::table::SlickTable;

/// A snapshot of a table's occupancy and metadata footprint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableStats {
    pub main_len: usize,
    pub backyard_len: usize,
    pub capacity: usize,
    pub num_blocks: usize,
    /// Bits needed for all block metadata if it were bit-packed.
    pub metadata_bits_nominal: u64,
    /// `backyard_len / (main_len + backyard_len)`, 0 for an empty table.
    pub backyard_fraction: f64,
    /// Largest `|offset|` any boundary has reached so far.
    pub max_abs_offset_seen: u32,
    /// Largest threshold currently set on any block.
    pub max_threshold_seen: u32,
}

impl TableStats {
    pub(crate) fn collect(t: &SlickTable) -> Self {
        let total = t.main_len + t.backyard.len();
        TableStats {
            main_len: t.main_len,
            backyard_len: t.backyard.len(),
            capacity: t.config.capacity,
            num_blocks: t.num_blocks,
            metadata_bits_nominal: t.num_blocks as u64 * t.config.metadata_bits_per_block(),
            backyard_fraction: if total == 0 {
                0.0
            } else {
                t.backyard.len() as f64 / total as f64
            },
            max_abs_offset_seen: t.max_abs_offset_seen,
            max_threshold_seen: t.metas.iter().map(|m| m.threshold).max().unwrap_or(0),
        }
    }
}
