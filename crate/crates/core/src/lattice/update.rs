use super::{diagonal_start, index_unchecked, is_valid_key, CellValue, Coord, Key, Lattice};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    AlreadyPresent,
    Inserted { at: Coord, grew: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeleteOutcome {
    Absent,
    Deleted { shrank: bool },
}

impl Lattice {
    pub(crate) fn swap_cells(&mut self, a: Coord, b: Coord) {
        self.cells.swap(index_unchecked(a), index_unchecked(b));
        self.counters.swaps += 1;
    }

    fn cmp_lt(&mut self, a: CellValue, b: CellValue) -> bool {
        self.counters.comparisons += 1;
        a < b
    }

    /// Sinks the key at `c` toward diagonal one until it exceeds both its
    /// D and UL neighbours, swapping with the larger of the two each step.
    /// Returns the cell where the key comes to rest.
    pub fn inward(&mut self, mut c: Coord) -> Coord {
        loop {
            let v = self.at(c);
            let down = Coord::new(c.row - 1, c.col);
            let up_left = Coord::new(c.row + 1, c.col - 1);
            let dv = self.at(down);
            let ulv = self.at(up_left);
            let below_down = self.cmp_lt(v, dv);
            if !below_down && !self.cmp_lt(v, ulv) {
                return c;
            }
            let target = if self.cmp_lt(dv, ulv) { up_left } else { down };
            self.swap_cells(c, target);
            c = target;
        }
    }

    /// Floats the key at `c` toward the staging diagonal until it is below
    /// its U neighbour and below its DR neighbour (or DR is a Zero wall).
    pub fn outward(&mut self, mut c: Coord) -> Coord {
        let h = self.height;
        loop {
            let v = self.at(c);
            let up = Coord::new(c.row + 1, c.col);
            let uv = if up.fits(h) { self.at(up) } else { CellValue::INFINITY };
            let dr = Coord::new(c.row - 1, c.col + 1);
            let drv = self.at(dr);
            let above_up = self.cmp_lt(uv, v);
            let above_dr = !drv.is_zero() && self.cmp_lt(drv, v);
            if !above_up && !above_dr {
                return c;
            }
            let target = if !drv.is_zero() && self.cmp_lt(drv, uv) { dr } else { up };
            self.swap_cells(c, target);
            c = target;
        }
    }

    fn staging_slot(&self, position: usize) -> Coord {
        Coord::on_diagonal(self.height + 2, position)
    }

    /// Inserts `key`, growing the lattice by one diagonal when the staging
    /// diagonal is full.
    pub fn insert(&mut self, key: Key) -> Result<InsertOutcome> {
        if !is_valid_key(key) {
            return Err(Error::KeyOutOfDomain(key as u64));
        }
        let t = self.trace(key);
        self.counters.comparisons += t.comparisons as u64;
        if t.found {
            return Ok(InsertOutcome::AlreadyPresent);
        }
        let grew = self.outer == self.height && self.outer > 0;
        if grew {
            self.grow();
        }
        let slot = self.staging_slot(self.outer + 2);
        self.cells[index_unchecked(slot)] = CellValue::raw(key);
        self.outer += 1;
        let at = self.inward(slot);
        Ok(InsertOutcome::Inserted { at, grew })
    }

    /// Removes `key`. The last staging key fills the hole, then inward or
    /// outward restores order. Shrinks by one diagonal when the staging
    /// diagonal empties.
    pub fn delete(&mut self, key: Key) -> Result<DeleteOutcome> {
        if !is_valid_key(key) {
            return Err(Error::KeyOutOfDomain(key as u64));
        }
        let t = self.trace(key);
        self.counters.comparisons += t.comparisons as u64;
        if !t.found {
            return Ok(DeleteOutcome::Absent);
        }
        let c = t.location;
        let last = self.staging_slot(self.outer + 1);
        let last_idx = index_unchecked(last);
        if c == last {
            self.cells[last_idx] = CellValue::INFINITY;
        } else {
            self.cells[index_unchecked(c)] = self.cells[last_idx];
            self.cells[last_idx] = CellValue::INFINITY;
            let v = self.at(c);
            let dv = self.at(Coord::new(c.row - 1, c.col));
            let ulv = self.at(Coord::new(c.row + 1, c.col - 1));
            self.counters.comparisons += 2;
            if v < dv || v < ulv {
                self.inward(c);
            } else {
                self.outward(c);
            }
        }
        self.outer -= 1;
        let shrank = self.outer == 0 && self.height > 1;
        if shrank {
            self.shrink();
        }
        Ok(DeleteOutcome::Deleted { shrank })
    }

    /// Position (head is 1) of the last proper key on diagonal `s`, skipping
    /// the Infinity suffix of the staging diagonal.
    pub(crate) fn last_proper_position(&self, s: usize) -> Option<usize> {
        let d = &self.cells[diagonal_start(s)..diagonal_start(s + 1)];
        (2..s).rev().find(|&p| d[p - 1].is_proper())
    }
}
