//! Sequential against data-parallel execution of the fan-out hot paths.
//! Without the `parallel` feature both arms run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pcat_core::analysis::{is_beta_extremal_with, neighborhood_density_ok_with, SearchMode};
use pcat_core::graph::generators::random_min_degree_seeded;
use pcat_core::harness::{run_sweep_with, DegreeValues, SweepSolver, SweepSpec};
use pcat_core::{Execution, Rational};

const ARMS: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn density(c: &mut Criterion) {
    let g = random_min_degree_seeded(120, 60, 1);
    let mut group = c.benchmark_group("neighborhood_density");
    for (name, exec) in ARMS {
        group.bench_with_input(BenchmarkId::new(name, 120), &g, |b, g| {
            b.iter(|| neighborhood_density_ok_with(black_box(g), Rational::new(1, 20), exec))
        });
    }
    group.finish();
}

fn extremality(c: &mut Criterion) {
    let g = random_min_degree_seeded(60, 30, 2);
    let mut group = c.benchmark_group("extremality_local_search");
    group.sample_size(10);
    for (name, exec) in ARMS {
        group.bench_with_input(BenchmarkId::new(name, 60), &g, |b, g| {
            b.iter(|| is_beta_extremal_with(black_box(g), Rational::new(1, 50), SearchMode::local(3), exec).unwrap())
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let spec = SweepSpec {
        p: 1,
        n_values: vec![10],
        degree_values: DegreeValues::List(vec![4, 5, 6]),
        trials: 32,
        seed: 5,
        solver: SweepSolver::Exact,
        budget: 200_000,
    };
    let mut group = c.benchmark_group("exact_sweep");
    group.sample_size(10);
    for (name, exec) in ARMS {
        group.bench_function(name, |b| b.iter(|| run_sweep_with(black_box(&spec), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, density, extremality, sweep);
criterion_main!(benches);
