//! Jump search: instead of stepping one cell at a time, each maximal run of
//! identical moves in the basic search is replaced by a single locate over
//! the current column (downward jump) or diagonal (diagonal jump).

use crate::analytics::Rational;
use crate::lattice::{diagonal_start, is_valid_key, Coord, Key, Lattice, Move, KEY_MAX};
use crate::par::{self, Execution};

/// How a jump finds its landing cell on a sorted line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum JumpStrategy {
    LinearScan,
    #[default]
    BinaryLocate,
}

impl JumpStrategy {
    pub const ALL: [JumpStrategy; 2] = [JumpStrategy::LinearScan, JumpStrategy::BinaryLocate];

    /// Returns the first index in `0..len` where `pred` is false, given that
    /// `pred` holds on a prefix of the line. Every evaluation of `pred` is
    /// one probe.
    pub fn locate(self, len: usize, mut pred: impl FnMut(usize) -> bool, probes: &mut u32) -> usize {
        match self {
            JumpStrategy::LinearScan => {
                for i in 0..len {
                    *probes += 1;
                    if !pred(i) {
                        return i;
                    }
                }
                len
            }
            JumpStrategy::BinaryLocate => {
                let (mut lo, mut hi) = (0, len);
                while lo < hi {
                    let mid = lo + (hi - lo) / 2;
                    *probes += 1;
                    if pred(mid) {
                        lo = mid + 1;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }
}

impl std::str::FromStr for JumpStrategy {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "linear" => Ok(JumpStrategy::LinearScan),
            "binary" => Ok(JumpStrategy::BinaryLocate),
            other => Err(crate::Error::arg(format!("unknown strategy {other:?}, expected binary or linear"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JumpOutcome {
    pub found: bool,
    /// The key's cell when found, the terminal Zero cell when a downward
    /// jump reached row one, `None` when a diagonal jump ran off the line.
    pub location: Option<Coord>,
    pub jumps: u32,
    /// Cell evaluations made inside line locates.
    pub probes: u32,
    /// All key comparisons: probes plus one equality test per landing cell.
    pub comparisons: u32,
}

/// Highest cell strictly below `from` in its column whose value is `<= key`.
/// The row-one Zero always qualifies.
pub fn locate_down_column(lat: &Lattice, from: Coord, key: Key, strat: JumpStrategy) -> Coord {
    down_column(lat, from, key, strat).0
}

fn down_column(lat: &Lattice, from: Coord, key: Key, strat: JumpStrategy) -> (Coord, u32) {
    // Line i is row from.row - 1 - i, for rows from.row - 1 down to 2.
    let len = from.row.saturating_sub(2);
    let mut probes = 0;
    let cells = lat.cells();
    let col = from.col;
    let i = strat.locate(
        len,
        |i| {
            let row = from.row - 1 - i;
            let s = row + col - 1;
            cells[diagonal_start(s) + col - 1].bits() > key
        },
        &mut probes,
    );
    let row = if i == len { 1 } else { from.row - 1 - i };
    (Coord::new(row, col), probes)
}

/// Nearest cell after `from` on its diagonal, excluding the Zero tail, whose
/// value is `>= key`; `None` when every such cell is smaller.
pub fn locate_along_diagonal(lat: &Lattice, from: Coord, key: Key, strat: JumpStrategy) -> Option<Coord> {
    along_diagonal(lat, from, key, strat).0
}

fn along_diagonal(lat: &Lattice, from: Coord, key: Key, strat: JumpStrategy) -> (Option<Coord>, u32) {
    let s = from.diagonal();
    let p = from.position();
    // Positions p + 1 ..= s - 1.
    let len = (s - 1).saturating_sub(p);
    let base = diagonal_start(s) + p;
    let cells = lat.cells();
    let mut probes = 0;
    let i = strat.locate(len, |i| cells[base + i].bits() < key, &mut probes);
    let at = (i < len).then(|| Coord::on_diagonal(s, p + 1 + i));
    (at, probes)
}

pub fn search_jump(lat: &Lattice, key: Key, strat: JumpStrategy) -> JumpOutcome {
    let mut out = JumpOutcome { found: false, location: None, jumps: 0, probes: 0, comparisons: 0 };
    if !is_valid_key(key) {
        return out;
    }
    let mut c = lat.start();
    loop {
        out.comparisons += 1;
        let v = lat.get(c).expect("jump stays in shape").bits();
        if v == key {
            out.found = true;
            out.location = Some(c);
            return out;
        }
        if v == 0 {
            out.location = Some(c);
            return out;
        }
        out.jumps += 1;
        let (next, probes) = if key < v {
            let (n, p) = down_column(lat, c, key, strat);
            (Some(n), p)
        } else {
            along_diagonal(lat, c, key, strat)
        };
        out.probes += probes;
        out.comparisons += probes;
        match next {
            Some(n) => c = n,
            None => return out,
        }
    }
}

/// Number of maximal runs of identical moves.
pub fn jump_factor_of_path(path: &[Move]) -> u32 {
    let mut blocks = 0;
    let mut last = None;
    for &m in path {
        if last != Some(m) {
            blocks += 1;
            last = Some(m);
        }
    }
    blocks
}

/// One absent probe per gap between consecutive stored keys, plus one below
/// the minimum and one above the maximum where the key domain allows.
/// Every absent key in a gap follows the same search path as its
/// representative.
pub fn gap_representatives(sorted_keys: &[Key]) -> Vec<Key> {
    let mut reps = Vec::new();
    let Some((&first, &last)) = sorted_keys.first().zip(sorted_keys.last()) else {
        return vec![1];
    };
    if first > 1 {
        reps.push(first - 1);
    }
    for w in sorted_keys.windows(2) {
        if w[1] - w[0] > 1 {
            reps.push(w[0] + 1);
        }
    }
    if last < KEY_MAX {
        reps.push(last + 1);
    }
    reps
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeJumpFactor {
    /// Exact `J(L)`: the maximum over every key of the search space.
    pub max: u32,
    pub max_present: u32,
    pub max_absent: u32,
    pub avg_present: Rational,
    /// Average over gap representatives, one per gap.
    pub avg_absent_representatives: Rational,
}

pub fn lattice_jump_factor(lat: &Lattice) -> LatticeJumpFactor {
    lattice_jump_factor_with(lat, Execution::default())
}

pub fn lattice_jump_factor_with(lat: &Lattice, exec: Execution) -> LatticeJumpFactor {
    let keys = lat.sorted_keys();
    let reps = gap_representatives(&keys);
    let summarize = |probes: &[Key]| par::fold_sum_max(exec, probes, |&k| lat.trace(k).blocks as u64);
    let (sum_p, max_p) = summarize(&keys);
    let (sum_a, max_a) = summarize(&reps);
    let avg =
        |sum: u64, n: usize| if n == 0 { Rational::from_integer(0) } else { Rational::new(sum as i128, n as i128) };
    LatticeJumpFactor {
        max: max_p.max(max_a) as u32,
        max_present: max_p as u32,
        max_absent: max_a as u32,
        avg_present: avg(sum_p, keys.len()),
        avg_absent_representatives: avg(sum_a, reps.len()),
    }
}
