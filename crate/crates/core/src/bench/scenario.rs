use std::collections::HashMap;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{draw_keys, rng_from};
use crate::analytics::{empirical_stats_with, LatticeStats, Rational};
use crate::error::{Error, Result};
use crate::lattice::{Key, Lattice, KEY_MAX};
use crate::par::Execution;
use crate::sortedness::{degree, sort_step, SortStepOutcome};

/// Order of the update stream within one epoch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum UpdateOrder {
    /// All inserts, then all deletes.
    #[default]
    InsertsFirst,
    /// Inserts and deletes interleaved in random order.
    Shuffled,
}

impl UpdateOrder {
    pub fn name(self) -> &'static str {
        match self {
            UpdateOrder::InsertsFirst => "inserts-first",
            UpdateOrder::Shuffled => "shuffled",
        }
    }
}

impl std::str::FromStr for UpdateOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inserts-first" => Ok(UpdateOrder::InsertsFirst),
            "shuffled" => Ok(UpdateOrder::Shuffled),
            other => Err(Error::arg(format!("unknown update order {other:?}, expected inserts-first or shuffled"))),
        }
    }
}

/// Idle-time maintenance scenario: starting from a completely sorted full
/// lattice, each epoch applies `0.1N` inserts and `0.05N` deletes, then
/// spends `γ` sort steps per update during idle time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioConfig {
    pub height: usize,
    /// Sort-step calls per insert or delete call.
    pub gamma: Rational,
    pub epochs: usize,
    pub seed: u64,
    pub order: UpdateOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpochLog {
    /// Key count at the start of the epoch; the update volume is based on it.
    pub n_start: usize,
    pub inserts: usize,
    pub deletes: usize,
    pub sort_calls: usize,
    pub degree_after_updates: usize,
    pub degree_after_idle: usize,
}

#[derive(Clone, Debug)]
pub struct ScenarioOutcome {
    pub lattice: Lattice,
    pub epochs: Vec<EpochLog>,
    pub stats: LatticeStats,
}

/// Present keys with O(1) uniform sampling and removal.
struct Pool {
    keys: Vec<Key>,
    slot: HashMap<Key, usize>,
}

impl Pool {
    fn new(keys: Vec<Key>) -> Self {
        let slot = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Pool { keys, slot }
    }

    fn contains(&self, k: Key) -> bool {
        self.slot.contains_key(&k)
    }

    fn add(&mut self, k: Key) {
        self.slot.insert(k, self.keys.len());
        self.keys.push(k);
    }

    fn take(&mut self, i: usize) -> Key {
        let k = self.keys.swap_remove(i);
        self.slot.remove(&k);
        if let Some(&moved) = self.keys.get(i) {
            self.slot.insert(moved, i);
        }
        k
    }
}

#[derive(Clone, Copy)]
enum Op {
    Insert,
    Delete,
}

pub fn run_gamma_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
    run_gamma_scenario_with(cfg, Execution::Sequential)
}

pub(crate) fn run_gamma_scenario_with(cfg: &ScenarioConfig, exec: Execution) -> Result<ScenarioOutcome> {
    let h = cfg.height;
    if h < 1 || cfg.epochs < 1 {
        return Err(Error::arg("height and epochs must be at least 1"));
    }
    if cfg.gamma < Rational::from_integer(0) {
        return Err(Error::arg("gamma must be non-negative"));
    }
    let mut rng = rng_from(cfg.seed);
    let n = h * (h + 1) / 2;
    let mut keys = draw_keys(&mut rng, n);
    keys.sort_unstable();
    let mut lat = Lattice::sorted_full(&keys)?;
    let mut pool = Pool::new(keys);
    let mut epochs = Vec::with_capacity(cfg.epochs);

    for _ in 0..cfg.epochs {
        let n_start = lat.len();
        let inserts = (n_start + 5) / 10;
        let deletes = (n_start + 10) / 20;
        let mut ops: Vec<Op> =
            std::iter::repeat_n(Op::Insert, inserts).chain(std::iter::repeat_n(Op::Delete, deletes)).collect();
        if cfg.order == UpdateOrder::Shuffled {
            ops.shuffle(&mut rng);
        }
        for op in ops {
            match op {
                Op::Insert => {
                    let k = loop {
                        let k = rng.gen_range(1..=KEY_MAX);
                        if !pool.contains(k) {
                            break k;
                        }
                    };
                    lat.insert(k)?;
                    pool.add(k);
                }
                Op::Delete => {
                    if pool.keys.is_empty() {
                        return Err(Error::Scenario("delete stream exhausted the lattice".into()));
                    }
                    let k = pool.take(rng.gen_range(0..pool.keys.len()));
                    lat.delete(k)?;
                }
            }
        }
        let degree_after_updates = degree(&lat).alpha;
        let budget = (cfg.gamma * Rational::from_integer((inserts + deletes) as i128)).ceil().to_integer();
        let budget = budget.to_usize().unwrap_or(usize::MAX);
        let mut sort_calls = 0;
        while sort_calls < budget {
            if sort_step(&mut lat) == SortStepOutcome::AlreadyHSorted {
                break;
            }
            sort_calls += 1;
        }
        epochs.push(EpochLog {
            n_start,
            inserts,
            deletes,
            sort_calls,
            degree_after_updates,
            degree_after_idle: degree(&lat).alpha,
        });
    }
    let stats = empirical_stats_with(&lat, exec);
    Ok(ScenarioOutcome { lattice: lat, epochs, stats })
}
