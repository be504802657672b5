//! Sequential against rayon execution for the two data-parallel paths: Koszul
//! ranks inside a Betti table, and a batch of independent verifications.
//!
//! Build without the `parallel` feature and both variants run sequentially.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rees_core::arith::Field;
use rees_core::exec::{self, ExecMode};
use rees_core::points::{random_points, Constraints, PointSet};
use rees_core::rees::{verify_theorem, VerifyOptions};
use rees_core::resolution::{betti_table_in, generic_minors_ideal};
use rees_core::Budget;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn fp() -> Field {
    Field::prime(32003).unwrap()
}

fn koszul_ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti_generic_minors");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for (rows, cols) in [(2, 5), (3, 4)] {
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("{rows}x{cols}")), &(rows, cols), |b, &(r, k)| {
                // a fresh ideal per iteration keeps the Gröbner cache cold
                b.iter(|| {
                    let ideal = generic_minors_ideal(fp(), r, k, 2).unwrap();
                    black_box(betti_table_in(mode, &ideal, None, &Budget::unlimited()).unwrap())
                })
            });
        }
    }
    group.finish();
}

fn verification_batch(c: &mut Criterion) {
    let instances: Vec<(PointSet, u32)> = [(3, 3), (4, 3), (5, 3), (6, 4), (7, 4), (8, 4)]
        .into_iter()
        .enumerate()
        .map(|(i, (s, t))| (random_points(fp(), s, i as u64, &Constraints::general(s), 1000).unwrap(), t))
        .collect();
    let opts = VerifyOptions { compare_betti: false, check_splitting: false, ..VerifyOptions::default() };
    let mut group = c.benchmark_group("verification_batch");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                let reports = exec::map(mode, &instances, |(x, t)| verify_theorem(x, *t, &opts, &Budget::unlimited()));
                black_box(reports.into_iter().map(Result::unwrap).count())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, koszul_ranks, verification_batch);
criterion_main!(benches);
