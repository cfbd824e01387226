//! Closed-form counts and bounds, an independent reference set, and exact
//! empirical statistics of a lattice. Everything is integer or rational
//! arithmetic so that checks against the formulas need no tolerance.

mod reference;
mod stats;

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

pub use reference::ReferenceSet;
pub use stats::{empirical_stats, empirical_stats_with, LatticeStats};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"0.95"`, `"19/20"` or `"1"` into an exact rational.
pub fn parse_fraction(text: &str) -> Result<Rational> {
    let bad = || Error::arg(format!("not a fraction: {text:?}"));
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let int: i128 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
    let scale = 10i128.pow(frac.len() as u32);
    let frac: i128 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let magnitude = int.abs() * scale + frac;
    Ok(Rational::new(if negative { -magnitude } else { magnitude }, scale))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    pub proper: u64,
    pub improper: u64,
}

fn check_hk(h: u64, k: u64) -> Result<()> {
    if h < 1 || k < 1 || k > h {
        return Err(Error::arg(format!("need h >= 1 and 1 <= k <= h, got h={h}, k={k}")));
    }
    Ok(())
}

/// Proper and improper cell counts of a height-`h` lattice with `k` keys on
/// its staging diagonal.
pub fn counts(h: u64, k: u64) -> Result<Counts> {
    check_hk(h, k)?;
    Ok(Counts { proper: h * (h - 1) / 2 + k, improper: 4 * h - k + 6 })
}

/// Height of the smallest lattice holding `n` keys, `⌊(1 + √(8n − 7)) / 2⌋`
/// in integer arithmetic.
pub fn min_height(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::arg("a lattice holds at least one key"));
    }
    Ok((8 * n - 7).sqrt().div_ceil(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedComparisons {
    pub absent: u64,
    pub present_avg: Rational,
}

/// Basic-search cost: every absent key takes `h + 1` comparisons, present
/// keys average `(2h³ − 2h + 3k² + 3k) / (3h² − 3h + 6k)`.
pub fn expected_comparisons(h: u64, k: u64) -> Result<ExpectedComparisons> {
    check_hk(h, k)?;
    let (h, k) = (h as i128, k as i128);
    Ok(ExpectedComparisons {
        absent: (h + 1) as u64,
        present_avg: Rational::new(2 * h * h * h - 2 * h + 3 * k * k + 3 * k, 3 * h * h - 3 * h + 6 * k),
    })
}

/// Upper bound on the jump factor of one key whose path has `u` down-right
/// and `v` down moves.
pub fn jump_bound_key(u: u64, v: u64, present: bool, h: u64) -> u64 {
    let by_moves = if u == v { u + v } else { 2 * u.min(v) + 1 };
    let by_height = if present { h.saturating_sub(1) } else { h };
    by_moves.min(by_height)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AvgJumpBounds {
    pub present: Rational,
    /// Holds only if absent searches end uniformly over the row-one columns.
    pub absent: Rational,
}

/// Average jump-factor bounds for an arbitrary lattice: `h/3 + 5/6` for
/// present keys, `h/2 + 1/2` for absent keys (model-conditional).
pub fn avg_jump_bounds(h: u64) -> AvgJumpBounds {
    let h = h as i128;
    AvgJumpBounds { present: Rational::new(2 * h + 5, 6), absent: Rational::new(h + 1, 2) }
}

/// `max{4, 2h − 2α + 2}`, the published jump factor bound of an α-sorted
/// lattice. It holds for present keys. An absent key whose search ends on
/// diagonal `α + 1` makes `h + 1 − α` downward moves and can reach
/// `2h − 2α + 3` blocks, one more than this bound.
pub fn lattice_jump_bound(h: u64, alpha: u64) -> Result<u64> {
    if alpha < 3 || alpha > h {
        return Err(Error::arg(format!("need 3 <= alpha <= h, got alpha={alpha}, h={h}")));
    }
    Ok((2 * h + 2 - 2 * alpha).max(4))
}

/// Average jump-factor bounds for an α-sorted lattice with `β = α/h` in
/// `[1/2, 1]`.
pub fn avg_jump_bounds_sorted(h: u64, beta: Rational) -> Result<AvgJumpBounds> {
    let half = Rational::new(1, 2);
    let one = Rational::from_integer(1);
    if beta < half || beta > one {
        return Err(Error::arg(format!("beta {beta} outside [1/2, 1]")));
    }
    let h = Rational::from_integer(h as i128);
    let b = beta;
    let f = b * b * b * 2 - b * b * 4 + b * 2;
    let g = b * b * 3 - b * 6 + 1;
    let present = (f * h * h - g * h + b - 3) / (h + 1);
    let sq = b * b - b * 2 + 1;
    let absent = (sq * h * h + h * 4 - 4) / (h + 1);
    Ok(AvgJumpBounds { present, absent })
}

/// Share of keys inside the first `βh + 2` diagonals of a full lattice.
pub fn sorted_fraction(h: u64, beta: Rational) -> Rational {
    let h = h as i128;
    beta * beta + (beta - beta * beta) / (h + 1)
}

/// `⌊β·h⌋`.
pub fn alpha_for(h: u64, beta: Rational) -> u64 {
    let a = (beta * Rational::from_integer(h as i128)).floor().to_integer();
    a.max(0) as u64
}

/// One checked upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub quantity: String,
    pub bound: Rational,
    pub empirical: Rational,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn upper(quantity: impl Into<String>, bound: Rational, empirical: Rational) -> Self {
        BoundReport { quantity: quantity.into(), bound, empirical, satisfied: empirical <= bound }
    }
}

impl std::fmt::Display for BoundReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {:.4} <= {:.4} {}",
            self.quantity,
            to_f64(self.empirical),
            to_f64(self.bound),
            if self.satisfied { "ok" } else { "VIOLATED" }
        )
    }
}

pub(crate) fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub(crate) fn ratio_or_zero(num: u64, den: u64) -> Rational {
    if den == 0 {
        Rational::zero()
    } else {
        Rational::new(num as i128, den as i128)
    }
}
