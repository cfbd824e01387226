use std::fmt;

use super::{cell_count, coord::coord_unchecked, is_valid_key, Coord, Lattice};

/// One structural defect found by [`Lattice::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CellCount {
        expected: usize,
        actual: usize,
    },
    RowOneNotZero(Coord),
    ColumnOneNotZero(Coord),
    /// Interior cell of diagonal `h + 3` that is not Infinity.
    WallNotInfinity(Coord),
    /// A sentinel where a proper key is required.
    SentinelInside(Coord),
    KeyOutOfDomain {
        at: Coord,
        bits: u32,
    },
    /// A proper key after an Infinity cell on the staging diagonal.
    StagingGap(Coord),
    OuterCountMismatch {
        recorded: usize,
        actual: usize,
    },
    RowOrder {
        left: Coord,
        right: Coord,
    },
    ColumnOrder {
        lower: Coord,
        upper: Coord,
    },
    DiagonalOrder {
        earlier: Coord,
        later: Coord,
    },
    DuplicateKey {
        key: u32,
        first: Coord,
        second: Coord,
    },
    /// Advisory: a staging shell of height above one holding no keys.
    StagingEmpty {
        height: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CellCount { expected, actual } => write!(f, "expected {expected} cells, found {actual}"),
            Violation::RowOneNotZero(c) => write!(f, "row 1 cell {c} is not 0"),
            Violation::ColumnOneNotZero(c) => write!(f, "column 1 cell {c} is not 0"),
            Violation::WallNotInfinity(c) => write!(f, "outer wall cell {c} is not ∞"),
            Violation::SentinelInside(c) => write!(f, "cell {c} must hold a proper key"),
            Violation::KeyOutOfDomain { at, bits } => write!(f, "cell {at} holds {bits}, outside the key domain"),
            Violation::StagingGap(c) => write!(f, "staging cell {c} holds a key after an ∞"),
            Violation::OuterCountMismatch { recorded, actual } => {
                write!(f, "staging count is {recorded} but the diagonal holds {actual} keys")
            }
            Violation::RowOrder { left, right } => {
                write!(f, "row {} out of order between {left} and {right}", left.row)
            }
            Violation::ColumnOrder { lower, upper } => {
                write!(f, "column {} out of order between {lower} and {upper}", lower.col)
            }
            Violation::DiagonalOrder { earlier, later } => {
                write!(f, "diagonal {} out of order between {earlier} and {later}", earlier.diagonal())
            }
            Violation::DuplicateKey { key, first, second } => write!(f, "key {key} appears at {first} and {second}"),
            Violation::StagingEmpty { height } => write!(f, "k=0 staging lattice of height {height}"),
        }
    }
}

impl Lattice {
    /// Checks every structural condition and reports each violation with its
    /// coordinates, in flat-index order of the offending cell. An empty
    /// report means the lattice is sound.
    pub fn validate(&self) -> Vec<Violation> {
        let h = self.height;
        let mut out = Vec::new();
        if self.cells.len() != cell_count(h) {
            out.push(Violation::CellCount { expected: cell_count(h), actual: self.cells.len() });
            return out;
        }
        let staging = h + 2;
        let wall = h + 3;
        let mut seen_infinity = false;
        let mut staged = 0;
        for (idx, &v) in self.cells.iter().enumerate() {
            let c = coord_unchecked(idx);
            let s = c.diagonal();
            if c.row == 1 {
                if !v.is_zero() {
                    out.push(Violation::RowOneNotZero(c));
                }
                continue;
            }
            if c.col == 1 {
                if !v.is_zero() {
                    out.push(Violation::ColumnOneNotZero(c));
                }
                continue;
            }
            if s == wall {
                if !v.is_infinity() {
                    out.push(Violation::WallNotInfinity(c));
                }
                continue;
            }
            if s == staging {
                if v.is_infinity() {
                    seen_infinity = true;
                    continue;
                }
                if v.is_proper() {
                    staged += 1;
                    if seen_infinity {
                        out.push(Violation::StagingGap(c));
                    }
                }
            }
            if !v.is_proper() {
                out.push(Violation::SentinelInside(c));
                continue;
            }
            if !is_valid_key(v.bits()) {
                out.push(Violation::KeyOutOfDomain { at: c, bits: v.bits() });
            }
            let left = Coord::new(c.row, c.col - 1);
            if self.at(left).is_proper() && self.at(left) >= v {
                out.push(Violation::RowOrder { left, right: c });
            }
            let lower = Coord::new(c.row - 1, c.col);
            if self.at(lower).is_proper() && self.at(lower) >= v {
                out.push(Violation::ColumnOrder { lower, upper: c });
            }
            let earlier = Coord::new(c.row + 1, c.col - 1);
            if self.at(earlier).is_proper() && self.at(earlier) >= v {
                out.push(Violation::DiagonalOrder { earlier, later: c });
            }
        }

        let mut keyed: Vec<(u32, usize)> =
            self.cells.iter().enumerate().filter(|(_, v)| v.is_proper()).map(|(i, v)| (v.bits(), i)).collect();
        keyed.sort_unstable();
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 {
                out.push(Violation::DuplicateKey {
                    key: w[0].0,
                    first: coord_unchecked(w[0].1),
                    second: coord_unchecked(w[1].1),
                });
            }
        }

        if staged != self.outer {
            out.push(Violation::OuterCountMismatch { recorded: self.outer, actual: staged });
        }
        if staged == 0 && h > 1 {
            out.push(Violation::StagingEmpty { height: h });
        }
        out
    }
}
