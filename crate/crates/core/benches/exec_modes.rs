use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lattice_ds::analytics::{empirical_stats_with, Rational};
use lattice_ds::bench::{build_random, run_sorted_table, BuildConfig, SortedTableConfig};
use lattice_ds::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn stats(c: &mut Criterion) {
    let mut g = c.benchmark_group("empirical_stats");
    g.sample_size(10);
    for h in [100usize, 300] {
        let lat = build_random(&BuildConfig::full(h, Rational::new(9, 10), 1)).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, h), &lat, |b, lat| b.iter(|| empirical_stats_with(lat, exec)));
        }
    }
    g.finish();
}

fn sorted_table(c: &mut Criterion) {
    let cfg = SortedTableConfig {
        heights: vec![10, 50, 100],
        betas: vec![Rational::new(4, 5), Rational::new(9, 10)],
        trials: 8,
        seed: 1,
    };
    let mut g = c.benchmark_group("sorted_table");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| run_sorted_table(&cfg, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, stats, sorted_table);
criterion_main!(benches);
