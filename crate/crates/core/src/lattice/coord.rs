use std::fmt;

use crate::error::{Error, Result};

/// A cell position. Rows count bottom to top, columns left to right, both
/// from one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub const fn new(row: usize, col: usize) -> Self {
        Coord { row, col }
    }

    /// The cell at `position` (head is 1) of diagonal `diagonal`.
    pub const fn on_diagonal(diagonal: usize, position: usize) -> Self {
        Coord { row: diagonal + 1 - position, col: position }
    }

    pub const fn diagonal(self) -> usize {
        self.row + self.col - 1
    }

    /// Position within the diagonal, numbered head to tail.
    pub const fn position(self) -> usize {
        self.col
    }

    /// Whether the cell exists in the shape `(h+3, h+2, ..., 1)`.
    pub const fn fits(self, height: usize) -> bool {
        self.row >= 1 && self.col >= 1 && self.row + self.col <= height + 4
    }

    pub fn neighbor(self, dir: Direction, height: usize) -> Option<Coord> {
        let (dr, dc) = dir.offset();
        let row = self.row.checked_add_signed(dr)?;
        let col = self.col.checked_add_signed(dc)?;
        let c = Coord { row, col };
        c.fits(height).then_some(c)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The eight single-cell movements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    U,
    D,
    L,
    R,
    UL,
    UR,
    DL,
    DR,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::U,
        Direction::D,
        Direction::L,
        Direction::R,
        Direction::UL,
        Direction::UR,
        Direction::DL,
        Direction::DR,
    ];

    const fn offset(self) -> (isize, isize) {
        match self {
            Direction::U => (1, 0),
            Direction::D => (-1, 0),
            Direction::L => (0, -1),
            Direction::R => (0, 1),
            Direction::UL => (1, -1),
            Direction::UR => (1, 1),
            Direction::DL => (-1, -1),
            Direction::DR => (-1, 1),
        }
    }
}

/// Number of cells in a lattice of height `h`.
pub const fn cell_count(height: usize) -> usize {
    (height + 3) * (height + 4) / 2
}

/// Flat index of the first cell of `diagonal` in diagonal-major order.
pub(crate) const fn diagonal_start(diagonal: usize) -> usize {
    diagonal * (diagonal - 1) / 2
}

pub fn index_of(height: usize, c: Coord) -> Result<usize> {
    if !c.fits(height) {
        return Err(Error::CoordOutOfShape { row: c.row, col: c.col, height });
    }
    Ok(index_unchecked(c))
}

#[inline]
pub(crate) const fn index_unchecked(c: Coord) -> usize {
    diagonal_start(c.diagonal()) + c.col - 1
}

pub fn coord_of(height: usize, index: usize) -> Result<Coord> {
    if index >= cell_count(height) {
        return Err(Error::IndexOutOfShape { index, height });
    }
    Ok(coord_unchecked(index))
}

pub(crate) fn coord_unchecked(index: usize) -> Coord {
    // Largest s with s(s-1)/2 <= index.
    let mut s = num_integer::Roots::sqrt(&(8 * index + 1)).div_ceil(2).max(1);
    while diagonal_start(s) > index {
        s -= 1;
    }
    while diagonal_start(s + 1) <= index {
        s += 1;
    }
    Coord::on_diagonal(s, index - diagonal_start(s) + 1)
}
