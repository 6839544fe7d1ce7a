use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use decaypoint::{find_decay_point, solve_problem1};
use decaypoint_bench::{chain, config, linear};
use std::hint::black_box;

fn chain_maps(c: &mut Criterion) {
    let mut group = c.benchmark_group("find/chain");
    for n in [3, 5, 10] {
        let map = chain(n);
        let cfg = config(0.1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| find_decay_point(black_box(&map), &cfg).unwrap())
        });
    }
    group.finish();
}

fn linear_maps(c: &mut Criterion) {
    let mut group = c.benchmark_group("find/linear");
    for n in [2, 5, 10] {
        let map = linear(n, 7);
        let cfg = config(0.1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| find_decay_point(black_box(&map), &cfg).unwrap())
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let map = linear(5, 7);
    let cfg = config(0.1);
    c.bench_function("verify/linear/5", |b| {
        b.iter(|| solve_problem1(black_box(&map), &cfg, 1e-6, 10_000).unwrap())
    });
}

criterion_group!(benches, chain_maps, linear_maps, certificate);
criterion_main!(benches);
