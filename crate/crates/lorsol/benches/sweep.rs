//! Parallel vs sequential grid evaluation.
//!
//! The sweep core is data-parallel via rayon (the default `parallel`
//! feature); the sequential fallback is the same code path with
//! `SweepOptions { parallel: false }`. This bench compares both on a
//! bounded slice of the family II grid and on the Walker residual grid.
//! On a single-core host the two are expected to be on par; on multicore
//! hosts the parallel path should scale with the thread count.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use lorsol::catalog::{evaluate_grid, family_grid, SweepOptions};
use lorsol::liemodel::Family;
use lorsol::walker::{
    build_soliton_field, run_combo, soliton_residual, solve_symmetric, Grid3, SolitonCombo,
    StructuredF, WalkerMetric,
};

fn bench_catalog_grid(c: &mut Criterion) {
    let (tuples, _) = family_grid(Family::II);
    let slice = &tuples[..tuples.len().min(64)];

    let mut group = c.benchmark_group("catalog_grid_64pts");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || slice.to_vec(),
            |t| black_box(evaluate_grid(Family::II, &t, SweepOptions { parallel: false })),
            BatchSize::LargeInput,
        )
    });
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || slice.to_vec(),
            |t| black_box(evaluate_grid(Family::II, &t, SweepOptions { parallel: true })),
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

fn bench_walker_residual(c: &mut Criterion) {
    let combo = SolitonCombo {
        kappa: -2.0,
        eps: -1.0,
        p: lorsol::walker::Poly::new(vec![1.0, 1.0]),
        q: lorsol::walker::Poly::new(vec![0.0, 0.0, 1.0]),
        lambda: 1.0,
        gamma: -1.0,
        w0: 0.0,
        w0p: 0.0,
    };
    let grid = Grid3::default();

    let mut group = c.benchmark_group("walker");
    group.sample_size(10);
    group.bench_function("construct_and_check", |b| {
        b.iter(|| black_box(run_combo(&combo, &grid)))
    });
    group.bench_function("residual_only", |b| {
        let spec = StructuredF { kappa: combo.kappa, p: combo.p.clone(), q: combo.q.clone() };
        let metric = WalkerMetric::structured(combo.eps, spec.clone()).unwrap();
        let sol = solve_symmetric(&spec, combo.eps, combo.lambda, combo.gamma, combo.w0, combo.w0p);
        let field = build_soliton_field(&spec, combo.eps, &sol, combo.lambda, combo.gamma);
        b.iter(|| black_box(soliton_residual(&metric, &field, combo.lambda, &grid)))
    });
    group.finish();
}

criterion_group!(benches, bench_catalog_grid, bench_walker_residual);
criterion_main!(benches);
