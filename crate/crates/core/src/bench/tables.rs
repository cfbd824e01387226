use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use rand::seq::SliceRandom;
use serde::Serialize;

use super::scenario::run_gamma_scenario_with;
use super::{build_random, derive_seed, rng_from, BuildConfig, ScenarioConfig, UpdateOrder};
use crate::analytics::{
    alpha_for, avg_jump_bounds_sorted, empirical_stats_with, lattice_jump_bound, mean_sd, to_f64, LatticeStats,
    Rational,
};
use crate::error::Result;
use crate::jump::{search_jump, JumpStrategy};
use crate::lattice::Key;
use crate::par::{self, Execution};
use crate::skiplist::SkipList;

/// One emitted table row. Fields that do not apply to a table are empty in
/// CSV output. Wall-clock columns are informational and only filled when
/// timings are requested.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatRecord {
    pub table: &'static str,
    pub h: usize,
    pub n: usize,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub epochs: Option<usize>,
    pub order: Option<&'static str>,
    pub trials: usize,
    pub seed: u64,
    pub degree: f64,
    pub avg_jf_present: f64,
    pub avg_jf_present_sd: f64,
    pub max_jf: u32,
    pub avg_cmp_basic: f64,
    pub avg_cmp_jump_binary: Option<f64>,
    pub avg_probes_jump_binary: Option<f64>,
    pub avg_probes_jump_linear: Option<f64>,
    pub skiplist_avg_cmp: Option<f64>,
    pub bound_avg_jf_present: Option<f64>,
    pub bound_max_jf: Option<u64>,
    pub ns_basic: Option<f64>,
    pub ns_jump_binary: Option<f64>,
    pub ns_skiplist: Option<f64>,
}

impl StatRecord {
    fn blank(table: &'static str, h: usize, n: usize, seed: u64) -> Self {
        StatRecord {
            table,
            h,
            n,
            beta: None,
            gamma: None,
            epochs: None,
            order: None,
            trials: 1,
            seed,
            degree: 0.0,
            avg_jf_present: 0.0,
            avg_jf_present_sd: 0.0,
            max_jf: 0,
            avg_cmp_basic: 0.0,
            avg_cmp_jump_binary: None,
            avg_probes_jump_binary: None,
            avg_probes_jump_linear: None,
            skiplist_avg_cmp: None,
            bound_avg_jf_present: None,
            bound_max_jf: None,
            ns_basic: None,
            ns_jump_binary: None,
            ns_skiplist: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SortedTableConfig {
    pub heights: Vec<usize>,
    pub betas: Vec<Rational>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct SortedTrial {
    pub h: usize,
    pub beta: Rational,
    pub trial: usize,
    pub seed: u64,
    pub stats: LatticeStats,
}

/// Builds `trials` full lattices per `(h, β)` and measures each. Trial `t`
/// of height `h` draws the same keys for every β.
pub fn sorted_trials(cfg: &SortedTableConfig, exec: Execution) -> Result<Vec<SortedTrial>> {
    let mut jobs = Vec::new();
    for &h in &cfg.heights {
        for &beta in &cfg.betas {
            for trial in 0..cfg.trials {
                jobs.push((h, beta, trial, derive_seed(cfg.seed, &[h as u64, trial as u64])));
            }
        }
    }
    par::map(exec, &jobs, |&(h, beta, trial, seed)| {
        let lat = build_random(&BuildConfig::full(h, beta, seed))?;
        let stats = empirical_stats_with(&lat, Execution::Sequential);
        Ok(SortedTrial { h, beta, trial, seed, stats })
    })
    .into_iter()
    .collect()
}

pub fn run_sorted_table(cfg: &SortedTableConfig, exec: Execution) -> Result<Vec<StatRecord>> {
    let trials = sorted_trials(cfg, exec)?;
    let mut groups: BTreeMap<(usize, Rational), Vec<&SortedTrial>> = BTreeMap::new();
    for t in &trials {
        groups.entry((t.h, t.beta)).or_default().push(t);
    }
    let mut rows = Vec::new();
    for ((h, beta), group) in groups {
        let jf: Vec<f64> = group.iter().map(|t| to_f64(t.stats.avg_jf_present)).collect();
        let (mean, sd) = mean_sd(&jf);
        let mut row = StatRecord::blank("sorted", h, group[0].stats.n, cfg.seed);
        row.beta = Some(to_f64(beta));
        row.trials = group.len();
        row.degree = mean_sd(&group.iter().map(|t| t.stats.degree as f64).collect::<Vec<_>>()).0;
        row.avg_jf_present = mean;
        row.avg_jf_present_sd = sd;
        row.max_jf = group.iter().map(|t| t.stats.max_jf).max().unwrap_or(0);
        row.avg_cmp_basic = mean_sd(&group.iter().map(|t| to_f64(t.stats.avg_cmp_present)).collect::<Vec<_>>()).0;
        row.bound_avg_jf_present = avg_jump_bounds_sorted(h as u64, beta).ok().map(|b| to_f64(b.present));
        row.bound_max_jf = lattice_jump_bound(h as u64, alpha_for(h as u64, beta)).ok();
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct GammaTableConfig {
    pub heights: Vec<usize>,
    pub gammas: Vec<Rational>,
    pub epochs: usize,
    pub trials: usize,
    pub seed: u64,
    pub order: UpdateOrder,
}

/// Runs the idle-time scenario for every `(h, γ, trial)`. Trial `t` of
/// height `h` replays the same update stream for every γ.
pub fn run_gamma_table(cfg: &GammaTableConfig, exec: Execution) -> Result<Vec<StatRecord>> {
    let mut jobs = Vec::new();
    for &h in &cfg.heights {
        for &gamma in &cfg.gammas {
            for trial in 0..cfg.trials {
                jobs.push((h, gamma, derive_seed(cfg.seed, &[h as u64, trial as u64])));
            }
        }
    }
    let (epochs, order) = (cfg.epochs, cfg.order);
    let outcomes = par::map(exec, &jobs, |&(height, gamma, seed)| {
        run_gamma_scenario_with(&ScenarioConfig { height, gamma, epochs, seed, order }, Execution::Sequential)
            .map(|o| (height, gamma, o.stats))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut groups: BTreeMap<(usize, Rational), Vec<LatticeStats>> = BTreeMap::new();
    for (h, gamma, stats) in outcomes {
        groups.entry((h, gamma)).or_default().push(stats);
    }
    let mut rows = Vec::new();
    for ((h, gamma), group) in groups {
        let jf: Vec<f64> = group.iter().map(|s| to_f64(s.avg_jf_present)).collect();
        let (mean, sd) = mean_sd(&jf);
        let mut row = StatRecord::blank("gamma", h, group[0].n, cfg.seed);
        row.gamma = Some(to_f64(gamma));
        row.epochs = Some(cfg.epochs);
        row.order = Some(cfg.order.name());
        row.trials = group.len();
        row.degree = mean_sd(&group.iter().map(|s| s.degree as f64).collect::<Vec<_>>()).0;
        row.avg_jf_present = mean;
        row.avg_jf_present_sd = sd;
        row.max_jf = group.iter().map(|s| s.max_jf).max().unwrap_or(0);
        row.avg_cmp_basic = mean_sd(&group.iter().map(|s| to_f64(s.avg_cmp_present)).collect::<Vec<_>>()).0;
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct CompareConfig {
    pub heights: Vec<usize>,
    pub betas: Vec<Rational>,
    /// Present keys probed per configuration; all keys when larger than N.
    pub probes: usize,
    pub seed: u64,
    pub timings: bool,
}

fn ns_per(keys: &[Key], mut f: impl FnMut(Key) -> bool) -> f64 {
    let start = Instant::now();
    let mut hits = 0usize;
    for &k in keys {
        hits += black_box(f(black_box(k))) as usize;
    }
    black_box(hits);
    start.elapsed().as_nanos() as f64 / keys.len().max(1) as f64
}

/// Search cost per present key for the basic search, binary and linear
/// jump search, and a skip list holding the same keys, measured as
/// comparison counts.
pub fn run_comparison_table(cfg: &CompareConfig, exec: Execution) -> Result<Vec<StatRecord>> {
    let mut jobs = Vec::new();
    for &h in &cfg.heights {
        for &beta in &cfg.betas {
            jobs.push((h, beta, derive_seed(cfg.seed, &[h as u64])));
        }
    }
    // Wall-clock measurements are taken one configuration at a time.
    let exec = if cfg.timings { Execution::Sequential } else { exec };
    par::map(exec, &jobs, |&(h, beta, seed)| {
        let lat = build_random(&BuildConfig::full(h, beta, seed))?;
        let stats = empirical_stats_with(&lat, Execution::Sequential);
        let mut rng = rng_from(derive_seed(seed, &[1]));
        let mut probe_keys: Vec<Key> = lat.keys().collect();
        probe_keys.shuffle(&mut rng);
        probe_keys.truncate(cfg.probes.max(1));
        let mut skip = SkipList::new(derive_seed(seed, &[2]));
        let mut insert_order: Vec<Key> = lat.keys().collect();
        insert_order.shuffle(&mut rng);
        for &k in &insert_order {
            skip.insert(k);
        }

        let m = probe_keys.len() as f64;
        let (mut basic, mut jcmp, mut jbin, mut jlin, mut sl) = (0u64, 0u64, 0u64, 0u64, 0u64);
        for &k in &probe_keys {
            basic += lat.trace(k).comparisons as u64;
            let b = search_jump(&lat, k, JumpStrategy::BinaryLocate);
            jcmp += b.comparisons as u64;
            jbin += b.probes as u64;
            jlin += search_jump(&lat, k, JumpStrategy::LinearScan).probes as u64;
            sl += skip.search(k).comparisons as u64;
        }
        let mut row = StatRecord::blank("compare", h, lat.len(), cfg.seed);
        row.beta = Some(to_f64(beta));
        row.degree = stats.degree as f64;
        row.avg_jf_present = to_f64(stats.avg_jf_present);
        row.max_jf = stats.max_jf;
        row.avg_cmp_basic = basic as f64 / m;
        row.avg_cmp_jump_binary = Some(jcmp as f64 / m);
        row.avg_probes_jump_binary = Some(jbin as f64 / m);
        row.avg_probes_jump_linear = Some(jlin as f64 / m);
        row.skiplist_avg_cmp = Some(sl as f64 / m);
        if cfg.timings {
            row.ns_basic = Some(ns_per(&probe_keys, |k| lat.contains(k)));
            row.ns_jump_binary = Some(ns_per(&probe_keys, |k| search_jump(&lat, k, JumpStrategy::BinaryLocate).found));
            row.ns_skiplist = Some(ns_per(&probe_keys, |k| skip.contains(k)));
        }
        Ok(row)
    })
    .into_iter()
    .collect()
}

pub fn write_csv<W: Write>(out: W, rows: &[StatRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.2}"))
}

/// Markdown rendering shaped like the published tables: heights down the
/// side, β or γ across the top.
pub fn markdown(rows: &[StatRecord]) -> String {
    let mut out = String::new();
    for table in ["sorted", "gamma", "compare"] {
        let sel: Vec<&StatRecord> = rows.iter().filter(|r| r.table == table).collect();
        if sel.is_empty() {
            continue;
        }
        let param = |r: &StatRecord| if table == "gamma" { r.gamma } else { r.beta }.unwrap_or(0.0);
        let mut params: Vec<f64> = sel.iter().map(|r| param(r)).collect();
        params.sort_by(f64::total_cmp);
        params.dedup();
        let mut heights: Vec<usize> = sel.iter().map(|r| r.h).collect();
        heights.sort_unstable();
        heights.dedup();
        let sym = if table == "gamma" { "γ" } else { "β" };
        let cols: Vec<String> = params.iter().map(|p| format!("{sym} = {p}")).collect();
        let find = |h: usize, p: f64| sel.iter().find(|r| r.h == h && param(r) == p).copied();
        match table {
            "compare" => {
                let _ = writeln!(out, "| h | N | basic | skip list | {} |", cols.join(" | "));
                let _ = writeln!(out, "|{}", "---|".repeat(4 + cols.len()));
                for &h in &heights {
                    let first = find(h, params[0]).expect("row present");
                    let jumps: Vec<String> =
                        params.iter().map(|&p| fmt_opt(find(h, p).and_then(|r| r.avg_cmp_jump_binary))).collect();
                    let _ = writeln!(
                        out,
                        "| {h} | {} | {:.2} | {} | {} |",
                        first.n,
                        first.avg_cmp_basic,
                        fmt_opt(first.skiplist_avg_cmp),
                        jumps.join(" | ")
                    );
                }
            }
            _ => {
                let _ = writeln!(out, "| h | {} |", cols.join(" | "));
                let _ = writeln!(out, "|{}", "---|".repeat(1 + cols.len()));
                for &h in &heights {
                    let cells: Vec<String> = params
                        .iter()
                        .map(|&p| find(h, p).map_or("-".into(), |r| format!("{:.2}", r.avg_jf_present)))
                        .collect();
                    let _ = writeln!(out, "| {h} | {} |", cells.join(" | "));
                }
            }
        }
        out.push('\n');
    }
    out
}
