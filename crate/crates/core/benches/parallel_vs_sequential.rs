use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use circuit_growth::architecture::{sample_point, BlockArchitecture};
use circuit_growth::dimension::TangentSpace;
use circuit_growth::exec::{map_indexed, map_indexed_sequential, stream_rng};
use circuit_growth::walk::{exact_complexity, random_word, Ball, CliffordTBackend};

fn rank_samples(c: &mut Criterion) {
    let arch = Arc::new(BlockArchitecture::brickwork(3).unwrap());
    let space = TangentSpace::new(Arc::clone(&arch));
    let work = |s: usize| {
        let p = sample_point(&arch, 4, &mut stream_rng(1, s as u64));
        space.sample_rank(&p, 1e-7).unwrap().rank
    };
    let mut group = c.benchmark_group("rank_samples");
    for samples in [8usize, 32] {
        group.bench_with_input(BenchmarkId::new("parallel", samples), &samples, |b, &n| {
            b.iter(|| black_box(map_indexed(n, work)))
        });
        group.bench_with_input(
            BenchmarkId::new("sequential", samples),
            &samples,
            |b, &n| b.iter(|| black_box(map_indexed_sequential(n, work))),
        );
    }
    group.finish();
}

fn walk_trials(c: &mut Criterion) {
    let backend = CliffordTBackend::new();
    let mut ball = Ball::new(&backend, 1 << 20);
    ball.grow_to(&backend, 6);
    let work = |t: usize| {
        let w = random_word(&backend, 10, &mut stream_rng(2, t as u64));
        exact_complexity(&backend, &ball, &w.element, 6, 1 << 20).complexity
    };
    let mut group = c.benchmark_group("walk_trials");
    group.bench_function("parallel", |b| b.iter(|| black_box(map_indexed(200, work))));
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(map_indexed_sequential(200, work)))
    });
    group.finish();
}

criterion_group!(benches, rank_samples, walk_trials);
criterion_main!(benches);
