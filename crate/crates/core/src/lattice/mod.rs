//! The lattice itself: a triangular arrangement of distinct keys stored in a
//! single diagonal-major array, with sorted rows, columns and diagonals.
//!
//! Cells are addressed by [`Coord`]. Diagonal `s` holds the cells with
//! `row + col - 1 == s`; its head is `(s, 1)` and its tail `(1, s)`. Row one,
//! column one and the ends of the outermost diagonal hold the Zero sentinel,
//! the rest of the outermost diagonal (`h + 3`) holds Infinity. Diagonal
//! `h + 2` is the staging diagonal: its proper keys form a prefix, the
//! remaining slots hold Infinity.

mod cell;
mod coord;
mod update;
mod validate;

use std::fmt;

pub use cell::{is_valid_key, CellValue, Key, KEY_MAX};
pub use coord::{cell_count, coord_of, index_of, Coord, Direction};
pub use update::{DeleteOutcome, InsertOutcome};
pub use validate::Violation;

pub(crate) use coord::{diagonal_start, index_unchecked};

use crate::error::{Error, Report, Result};

/// Work counters accumulated by mutating operations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    /// Three-way key comparisons.
    pub comparisons: u64,
    pub swaps: u64,
    /// Line locates performed by jump search.
    pub jumps: u64,
}

impl OpCounters {
    pub fn reset(&mut self) {
        *self = OpCounters::default();
    }
}

/// One step of the basic search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Down one row, to the previous diagonal.
    Down,
    /// Down-right along the current diagonal (`d`).
    DownRight,
}

/// The moves taken by a basic search, rendered as a string over `{D, d}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SearchPath(pub Vec<Move>);

impl SearchPath {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn downs(&self) -> usize {
        self.0.iter().filter(|m| **m == Move::Down).count()
    }

    pub fn down_rights(&self) -> usize {
        self.0.iter().filter(|m| **m == Move::DownRight).count()
    }
}

impl fmt::Display for SearchPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            f.write_str(match m {
                Move::Down => "D",
                Move::DownRight => "d",
            })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SearchPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'D' => Ok(Move::Down),
                'd' => Ok(Move::DownRight),
                other => Err(Error::arg(format!("unexpected move {other:?} in path"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SearchPath)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub found: bool,
    /// Where the search stopped: the key's cell when found, a row-one Zero
    /// cell otherwise.
    pub location: Coord,
    pub path: SearchPath,
    pub comparisons: u32,
}

/// Allocation-free summary of a basic search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trace {
    pub found: bool,
    pub location: Coord,
    pub comparisons: u32,
    /// Number of `D` moves.
    pub downs: u32,
    /// Number of `d` moves.
    pub down_rights: u32,
    /// Maximal runs of identical moves, i.e. the jump factor of the key.
    pub blocks: u32,
}

#[derive(Clone)]
pub struct Lattice {
    height: usize,
    outer: usize,
    cells: Vec<CellValue>,
    counters: OpCounters,
}

impl Lattice {
    /// A lattice of height `height` with every sentinel placed and every
    /// proper slot set to Infinity. Only `empty(1)` is a valid empty set;
    /// larger heights are staging shells meant to be filled.
    pub fn empty(height: usize) -> Result<Lattice> {
        if height < 1 {
            return Err(Error::arg("height must be at least 1"));
        }
        let mut cells = Vec::with_capacity(cell_count(height));
        for s in 1..=height + 3 {
            push_diagonal(&mut cells, s, s >= 3);
        }
        Ok(Lattice { height, outer: 0, cells, counters: OpCounters::default() })
    }

    /// Places `keys` in diagonal-major, head-to-tail order over diagonals
    /// `3..=h+2` and checks the result. The key count fixes the staging
    /// fill: `keys.len() == h(h-1)/2 + k` with `1 <= k <= h`, or zero keys
    /// for `h == 1`.
    pub fn from_keys(height: usize, keys: &[Key]) -> Result<Lattice> {
        let mut lat = Lattice::empty(height)?;
        let inner = height * (height - 1) / 2;
        let max = inner + height;
        let min = if height == 1 { 0 } else { inner + 1 };
        if keys.len() < min || keys.len() > max {
            return Err(Error::KeyCount { expected: if keys.len() < min { min } else { max }, found: keys.len() });
        }
        if let Some(&bad) = keys.iter().find(|k| !is_valid_key(**k)) {
            return Err(Error::KeyOutOfDomain(bad as u64));
        }
        let mut it = keys.iter();
        'fill: for s in 3..=height + 2 {
            for p in 2..s {
                match it.next() {
                    Some(&k) => {
                        let idx = diagonal_start(s) + p - 1;
                        lat.cells[idx] = CellValue::raw(k);
                    }
                    None => break 'fill,
                }
            }
        }
        lat.outer = keys.len() - inner;
        let violations = lat.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(Report(violations)));
        }
        Ok(lat)
    }

    /// A full, completely sorted lattice built from ascending `keys`.
    /// The key count must be triangular.
    pub fn sorted_full(sorted_keys: &[Key]) -> Result<Lattice> {
        let n = sorted_keys.len();
        let h = crate::analytics::min_height(n.max(1) as u64)? as usize;
        if h * (h + 1) / 2 != n {
            return Err(Error::arg(format!("{n} keys do not fill a lattice")));
        }
        Lattice::from_keys(h, sorted_keys)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of proper keys on the staging diagonal `h + 2`.
    pub fn outer_count(&self) -> usize {
        self.outer
    }

    /// Number of proper keys.
    pub fn len(&self) -> usize {
        if self.outer == 0 {
            0
        } else {
            self.height * (self.height - 1) / 2 + self.outer
        }
    }

    pub fn is_empty(&self) -> bool {
        self.outer == 0
    }

    pub fn is_full(&self) -> bool {
        self.outer == self.height
    }

    pub fn cells(&self) -> &[CellValue] {
        &self.cells
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }

    pub fn reset_counters(&mut self) {
        self.counters.reset();
    }

    pub fn get(&self, c: Coord) -> Option<CellValue> {
        c.fits(self.height).then(|| self.cells[index_unchecked(c)])
    }

    #[inline]
    pub(crate) fn at(&self, c: Coord) -> CellValue {
        self.cells[index_unchecked(c)]
    }

    /// The cells of diagonal `s`, head first.
    pub fn diagonal(&self, s: usize) -> &[CellValue] {
        assert!((1..=self.height + 3).contains(&s), "diagonal {s} out of range");
        &self.cells[diagonal_start(s)..diagonal_start(s + 1)]
    }

    /// Overwrites one cell without any bookkeeping. The staging count is
    /// recomputed, nothing else is checked; intended for fixtures and for
    /// exercising [`Lattice::validate`].
    pub fn set_unchecked(&mut self, c: Coord, value: CellValue) -> Result<()> {
        let idx = index_of(self.height, c)?;
        self.cells[idx] = value;
        self.outer = self.diagonal(self.height + 2).iter().filter(|v| v.is_proper()).count();
        Ok(())
    }

    /// Proper keys in diagonal-major, head-to-tail order.
    pub fn keys(&self) -> impl Iterator<Item = Key> + '_ {
        let end = diagonal_start(self.height + 3);
        self.cells[..end].iter().filter_map(|c| c.key())
    }

    pub fn sorted_keys(&self) -> Vec<Key> {
        let mut v: Vec<Key> = self.keys().collect();
        v.sort_unstable();
        v
    }

    pub fn start(&self) -> Coord {
        Coord::on_diagonal(self.height + 2, 2)
    }

    /// Follows the basic search from the second cell of diagonal `h + 2`:
    /// down-right while the key is larger, down while it is smaller, until
    /// the key or a Zero cell is met. One comparison per visited cell.
    pub fn trace(&self, key: Key) -> Trace {
        self.walk(key, |_| {})
    }

    pub fn search_basic(&self, key: Key) -> SearchOutcome {
        let mut moves = Vec::with_capacity(self.height);
        let t = self.walk(key, |m| moves.push(m));
        SearchOutcome { found: t.found, location: t.location, path: SearchPath(moves), comparisons: t.comparisons }
    }

    pub fn contains(&self, key: Key) -> bool {
        self.trace(key).found
    }

    #[inline]
    fn walk(&self, key: Key, mut on_move: impl FnMut(Move)) -> Trace {
        let mut row = self.height + 1;
        let mut col = 2;
        let mut s = self.height + 2;
        let mut idx = diagonal_start(s) + 1;
        let mut t =
            Trace { found: false, location: Coord::new(row, col), comparisons: 0, downs: 0, down_rights: 0, blocks: 0 };
        if !is_valid_key(key) {
            return t;
        }
        let mut last: Option<Move> = None;
        loop {
            t.comparisons += 1;
            let cell = self.cells[idx].bits();
            if cell == key {
                t.found = true;
                break;
            }
            if cell == 0 {
                break;
            }
            let m = if key < cell {
                idx -= s - 1;
                s -= 1;
                t.downs += 1;
                Move::Down
            } else {
                idx += 1;
                col += 1;
                t.down_rights += 1;
                Move::DownRight
            };
            row -= 1;
            if last != Some(m) {
                t.blocks += 1;
                last = Some(m);
            }
            on_move(m);
        }
        t.location = Coord::new(row, col);
        t
    }

    /// Multi-line picture of the lattice, top row first.
    pub fn render(&self) -> String {
        let width = self.cells.iter().map(|c| c.to_string().chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        for row in (1..=self.height + 3).rev() {
            let cols = self.height + 4 - row;
            let line: Vec<String> =
                (1..=cols).map(|col| format!("{:>width$}", self.at(Coord::new(row, col)).to_string())).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    fn grow(&mut self) {
        self.height += 1;
        push_diagonal(&mut self.cells, self.height + 3, true);
        self.outer = 0;
    }

    fn shrink(&mut self) {
        debug_assert!(self.height > 1);
        self.height -= 1;
        self.cells.truncate(cell_count(self.height));
        self.outer = self.diagonal(self.height + 2).iter().filter(|v| v.is_proper()).count();
    }
}

fn push_diagonal(cells: &mut Vec<CellValue>, s: usize, infinite: bool) {
    let fill = if infinite { CellValue::INFINITY } else { CellValue::ZERO };
    for p in 1..=s {
        cells.push(if p == 1 || p == s { CellValue::ZERO } else { fill });
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.height == other.height && self.outer == other.outer && self.cells == other.cells
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Lattice {{ height: {}, outer: {}, len: {} }}", self.height, self.outer, self.len())?;
        f.write_str(&self.render())
    }
}
