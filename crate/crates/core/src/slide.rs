//! Boundary sliding.
//!
//! A full block `b` borrows one slot from the nearest block `j` that has a
//! free one. Every boundary strictly between `b` and `j` (plus the boundary
//! adjacent to `j`) moves one slot toward `j`, the free slot travels toward
//! `b`, and each block in between rotates one entry from the end that shrinks
//! to the end that grows. Two boundaries never move: the start of block 0 and
//! the end of the last block.

use crate::table::SlickTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

impl SlickTable {
    /// Frees one slot at the end of block `b` by sliding from whichever side
    /// has the nearer donor. Ties go right.
    pub(crate) fn slide_any(&mut self, b: usize) -> bool {
        let right = self.find_donor(b, Direction::Right);
        let left = self.find_donor(b, Direction::Left);
        let dir = match (left, right) {
            (None, None) => return false,
            (Some(_), None) => Direction::Left,
            (None, Some(_)) => Direction::Right,
            (Some(l), Some(r)) if b - l < r - b => Direction::Left,
            _ => Direction::Right,
        };
        match dir {
            Direction::Left => self.shift_from_left(b, left.unwrap()),
            Direction::Right => self.shift_from_right(b, right.unwrap()),
        }
        true
    }

    /// Slides block `b` toward `dir`, returning false (and leaving the table
    /// untouched) when no donor on that side qualifies.
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn slide_toward(&mut self, b: usize, dir: Direction) -> bool {
        match (dir, self.find_donor(b, dir)) {
            (Direction::Left, Some(j)) => self.shift_from_left(b, j),
            (Direction::Right, Some(j)) => self.shift_from_right(b, j),
            (_, None) => return false,
        }
        true
    }

    /// Nearest block on the `dir` side of `b` that can give up a slot, such
    /// that every boundary on the way stays within the offset bound.
    pub(crate) fn find_donor(&self, b: usize, dir: Direction) -> Option<usize> {
        if self.extent(b) >= self.config.sliding_block_size {
            return None;
        }
        let max_offset = self.config.max_offset as i32;
        match dir {
            Direction::Right => {
                // The last block's end is pinned at capacity.
                for j in b + 1..self.num_blocks {
                    if self.metas[j].offset + 1 > max_offset {
                        return None;
                    }
                    if self.is_donor(j) {
                        return Some(j);
                    }
                }
                None
            }
            Direction::Left => {
                // Block 0's start is pinned at slot 0; boundary j+1 >= 1 always.
                for j in (0..b).rev() {
                    if self.metas[j + 1].offset - 1 < -max_offset {
                        return None;
                    }
                    if self.is_donor(j) {
                        return Some(j);
                    }
                }
                None
            }
        }
    }

    #[inline]
    fn is_donor(&self, j: usize) -> bool {
        let fill = self.fill[j] as usize;
        let extent = self.extent(j);
        if fill >= extent {
            return false;
        }
        // An empty single-slot block must not be swallowed whole.
        !(self.over_arc_guard && fill == 0 && extent == 1)
    }

    /// Donor `j > b`: boundaries `b+1..=j` move right by one.
    fn shift_from_right(&mut self, b: usize, j: usize) {
        for k in (b + 1..=j).rev() {
            let start = self.start(k);
            let fill = self.fill[k] as usize;
            if fill > 0 {
                self.slots[start + fill] = self.slots[start];
            }
            self.metas[k].offset += 1;
            self.note_offset(k);
        }
    }

    /// Donor `j < b`: boundaries `j+1..=b` move left by one.
    fn shift_from_left(&mut self, b: usize, j: usize) {
        for k in j + 1..=b {
            let start = self.start(k);
            let fill = self.fill[k] as usize;
            if fill > 0 {
                self.slots[start - 1] = self.slots[start + fill - 1];
            }
            self.metas[k].offset -= 1;
            self.note_offset(k);
        }
    }

    #[inline]
    fn note_offset(&mut self, k: usize) {
        self.max_abs_offset_seen = self
            .max_abs_offset_seen
            .max(self.metas[k].offset.unsigned_abs());
    }
}
