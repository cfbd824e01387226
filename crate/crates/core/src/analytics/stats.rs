use super::{ratio_or_zero, Rational};
use crate::jump::gap_representatives;
use crate::lattice::{Key, Lattice};
use crate::par::{self, Execution};
use crate::sortedness;

/// Exact search statistics of one lattice, over every present key and one
/// representative per absent gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeStats {
    pub h: usize,
    pub k: usize,
    pub n: usize,
    pub degree: usize,
    pub avg_cmp_present: Rational,
    /// `Some(c)` when every absent representative costs exactly `c`.
    pub cmp_absent: Option<u32>,
    pub avg_jf_present: Rational,
    pub avg_jf_absent: Rational,
    pub max_jf: u32,
    pub max_jf_present: u32,
    pub max_jf_absent: u32,
}

#[derive(Clone, Copy)]
struct Acc {
    n: u64,
    cmp: u64,
    cmp_min: u32,
    cmp_max: u32,
    jf: u64,
    jf_max: u32,
}

impl Acc {
    const EMPTY: Acc = Acc { n: 0, cmp: 0, cmp_min: u32::MAX, cmp_max: 0, jf: 0, jf_max: 0 };

    fn one(cmp: u32, jf: u32) -> Acc {
        Acc { n: 1, cmp: cmp as u64, cmp_min: cmp, cmp_max: cmp, jf: jf as u64, jf_max: jf }
    }

    fn merge(a: Acc, b: Acc) -> Acc {
        Acc {
            n: a.n + b.n,
            cmp: a.cmp + b.cmp,
            cmp_min: a.cmp_min.min(b.cmp_min),
            cmp_max: a.cmp_max.max(b.cmp_max),
            jf: a.jf + b.jf,
            jf_max: a.jf_max.max(b.jf_max),
        }
    }
}

fn accumulate(lat: &Lattice, keys: &[Key], exec: Execution) -> Acc {
    par::map_reduce(
        exec,
        keys,
        Acc::EMPTY,
        |&k| {
            let t = lat.trace(k);
            Acc::one(t.comparisons, t.blocks)
        },
        Acc::merge,
    )
}

pub fn empirical_stats(lat: &Lattice) -> LatticeStats {
    empirical_stats_with(lat, Execution::default())
}

pub fn empirical_stats_with(lat: &Lattice, exec: Execution) -> LatticeStats {
    let keys = lat.sorted_keys();
    let reps = gap_representatives(&keys);
    let present = accumulate(lat, &keys, exec);
    let absent = accumulate(lat, &reps, exec);
    LatticeStats {
        h: lat.height(),
        k: lat.outer_count(),
        n: keys.len(),
        degree: sortedness::degree(lat).alpha,
        avg_cmp_present: ratio_or_zero(present.cmp, present.n),
        cmp_absent: (absent.n > 0 && absent.cmp_min == absent.cmp_max).then_some(absent.cmp_max),
        avg_jf_present: ratio_or_zero(present.jf, present.n),
        avg_jf_absent: ratio_or_zero(absent.jf, absent.n),
        max_jf: present.jf_max.max(absent.jf_max),
        max_jf_present: present.jf_max,
        max_jf_absent: absent.jf_max,
    }
}
