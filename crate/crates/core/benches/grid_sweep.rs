//! Sequential vs rayon sweeps over a sample grid.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gnr_core::gallery;
use gnr_core::grid::SampleGrid;
use gnr_core::invariants::oracle_agreement;
use gnr_core::oracle::OracleConfig;
use gnr_core::parallel::Execution;
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn evaluate_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_grid");
    let base = gallery::pedal();
    for n in [64usize, 256] {
        let grid = SampleGrid::uniform(base.domain(), n, base.u_range(), n).unwrap();
        for (name, exec) in MODES {
            let surface = base.clone().with_execution(exec);
            group.bench_with_input(BenchmarkId::new(name, n), &grid, |b, grid| {
                b.iter(|| black_box(surface.evaluate_grid(grid).unwrap()))
            });
        }
    }
    group.finish();
}

fn oracle_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_agreement");
    group.sample_size(10);
    let base = gallery::cylindrical_helix();
    let grid = SampleGrid::uniform(base.domain(), 48, base.u_range(), 24).unwrap();
    let cfg = OracleConfig::default();
    for (name, exec) in MODES {
        let surface = base.clone().with_execution(exec);
        group.bench_function(name, |b| {
            b.iter(|| black_box(oracle_agreement(&surface, &grid, &cfg).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, evaluate_grid, oracle_sweep);
criterion_main!(benches);
