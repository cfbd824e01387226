//! Degree of sortedness and the incremental sort step meant for idle time.
//!
//! A lattice is α-sorted when, for every diagonal `4 <= s <= α + 2`, the
//! first proper key of diagonal `s` exceeds the last proper key of diagonal
//! `s - 1`; the keys of the first `α + 2` diagonals are then in fully sorted
//! diagonal-major order.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lattice::{diagonal_start, CellValue, Coord, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SortednessDegree {
    /// Largest α whose boundaries all hold. 2 means even the boundary at
    /// diagonal 5 fails; lattices below height 3 report their height.
    pub alpha: usize,
    pub height: usize,
}

impl SortednessDegree {
    pub fn beta(self) -> Ratio<u64> {
        Ratio::new(self.alpha as u64, self.height as u64)
    }

    pub fn is_fully_sorted(self) -> bool {
        self.alpha >= self.height
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortStepOutcome {
    AlreadyHSorted,
    Swapped { f: Coord, c: Coord, outward_swaps: u64 },
}

fn first_proper(lat: &Lattice, s: usize) -> Option<CellValue> {
    let v = lat.cells()[diagonal_start(s) + 1];
    v.is_proper().then_some(v)
}

fn last_proper(lat: &Lattice, s: usize) -> Option<CellValue> {
    lat.last_proper_position(s).map(|p| lat.cells()[diagonal_start(s) + p - 1])
}

/// Whether the boundary between diagonals `s - 1` and `s` holds. A diagonal
/// without proper keys imposes nothing.
fn boundary_holds(lat: &Lattice, s: usize) -> bool {
    match (last_proper(lat, s - 1), first_proper(lat, s)) {
        (Some(last), Some(first)) => last < first,
        _ => true,
    }
}

pub fn degree(lat: &Lattice) -> SortednessDegree {
    let h = lat.height();
    let alpha = (4..=h + 2).find(|&s| !boundary_holds(lat, s)).map_or(h, |s| s - 3);
    SortednessDegree { alpha, height: h }
}

/// Repairs the innermost broken boundary by one swap: the smallest key of
/// the outer diagonal trades places with the first larger key of the inner
/// one, then floats outward.
pub fn sort_step(lat: &mut Lattice) -> SortStepOutcome {
    let h = lat.height();
    let Some(i) = (4..=h + 1).find(|&i| !boundary_holds(lat, i + 1)) else {
        return SortStepOutcome::AlreadyHSorted;
    };
    let c = Coord::on_diagonal(i + 1, 2);
    let cv = lat.cells()[diagonal_start(i + 1) + 1];
    let inner = lat.diagonal(i);
    let p = (2..i).find(|&p| inner[p - 1] > cv).expect("a broken boundary has a larger key on the inner diagonal");
    let f = Coord::on_diagonal(i, p);
    let before = lat.counters().swaps;
    lat.swap_cells(f, c);
    lat.outward(c);
    SortStepOutcome::Swapped { f, c, outward_swaps: lat.counters().swaps - before - 1 }
}

/// Calls [`sort_step`] until the degree reaches `target_alpha` or the
/// lattice is fully sorted. Returns the number of calls made.
pub fn sort_to_degree(lat: &mut Lattice, target_alpha: usize) -> Result<usize> {
    if target_alpha > lat.height() {
        return Err(Error::arg(format!("target degree {target_alpha} exceeds the lattice height {}", lat.height())));
    }
    let mut calls = 0;
    while degree(lat).alpha < target_alpha {
        match sort_step(lat) {
            SortStepOutcome::AlreadyHSorted => break,
            SortStepOutcome::Swapped { .. } => calls += 1,
        }
    }
    Ok(calls)
}
