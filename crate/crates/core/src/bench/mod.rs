//! Experiment harness: seeded lattice builders, the idle-time maintenance
//! scenario and the table runners behind the `lds table` commands.

mod scenario;
mod tables;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use scenario::{run_gamma_scenario, EpochLog, ScenarioConfig, ScenarioOutcome, UpdateOrder};
pub use tables::{
    markdown, run_comparison_table, run_gamma_table, run_sorted_table, sorted_trials, write_csv, CompareConfig,
    GammaTableConfig, SortedTableConfig, SortedTrial, StatRecord,
};

use crate::analytics::{alpha_for, Rational};
use crate::error::{Error, Result};
use crate::lattice::{Key, Lattice, KEY_MAX};

pub type BenchRng = ChaCha8Rng;

/// Derives an independent seed from a base seed and a tuple of tags
/// (splitmix64 finalizer over each word).
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    tags.iter().fold(mix(base), |acc, &t| mix(acc ^ mix(t)))
}

pub fn rng_from(seed: u64) -> BenchRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` distinct keys drawn uniformly from the key domain, in random order.
pub fn draw_keys(rng: &mut BenchRng, n: usize) -> Vec<Key> {
    rand::seq::index::sample(rng, KEY_MAX as usize, n).into_iter().map(|i| i as Key + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildConfig {
    pub height: usize,
    /// Target sortedness fraction; the sorted prefix has height `⌊β·h⌋`.
    pub beta: Rational,
    pub seed: u64,
    /// Fill the staging diagonal (`N = h(h+1)/2`); otherwise its fill is
    /// drawn uniformly from `1..=h`.
    pub full: bool,
}

impl BuildConfig {
    pub fn full(height: usize, beta: Rational, seed: u64) -> Self {
        BuildConfig { height, beta, seed, full: true }
    }
}

/// Builds a lattice of height `cfg.height` from seeded random keys.
///
/// With `β = 0` every key is inserted into an empty lattice in random order.
/// Otherwise the smallest `α(α+1)/2` keys, `α = ⌊β·h⌋`, form a completely
/// sorted full lattice and the remaining keys are inserted in random order.
/// Those keys all exceed the sorted prefix, so the prefix stays put and the
/// result is at least α-sorted.
pub fn build_random(cfg: &BuildConfig) -> Result<Lattice> {
    let h = cfg.height;
    if h < 1 {
        return Err(Error::arg("height must be at least 1"));
    }
    if cfg.beta < Rational::from_integer(0) || cfg.beta > Rational::from_integer(1) {
        return Err(Error::arg(format!("beta {} outside [0, 1]", cfg.beta)));
    }
    let mut rng = rng_from(cfg.seed);
    let n = if cfg.full { h * (h + 1) / 2 } else { h * (h - 1) / 2 + rng.gen_range(1..=h) };
    if n > KEY_MAX as usize {
        return Err(Error::Build(format!("{n} distinct keys exceed the key domain")));
    }
    let mut keys = draw_keys(&mut rng, n);
    let mut alpha = alpha_for(h as u64, cfg.beta) as usize;
    while alpha * (alpha + 1) / 2 > n {
        alpha -= 1;
    }
    let mut lat = if alpha == 0 {
        Lattice::empty(1)?
    } else {
        keys.sort_unstable();
        let prefix = alpha * (alpha + 1) / 2;
        let lat = Lattice::sorted_full(&keys[..prefix])?;
        keys.drain(..prefix);
        keys.shuffle(&mut rng);
        lat
    };
    for k in keys {
        lat.insert(k)?;
    }
    if lat.height() != h {
        return Err(Error::Build(format!("built height {} instead of {h}", lat.height())));
    }
    Ok(lat)
}
