use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mukai_bench::{reduce_vector, reflection_specs, sample_pair, strata_vectors, wall_vector};
use mukai_core::lattice::e8_ball;
use mukai_core::{
    candidate_walls, canonical_reduce, chamber_representative, find_pq, mu_stable_exists, reflect, verify_min_codim,
    SurfaceConfig, WallConfig,
};

fn lattice(c: &mut Criterion) {
    let (v, w) = sample_pair();
    c.bench_function("mukai_pair", |b| b.iter(|| black_box(&v).pair(black_box(&w))));
    c.bench_function("e8_ball_4", |b| b.iter(|| e8_ball(black_box(4))));
}

fn transforms(c: &mut Criterion) {
    let (v, _) = sample_pair();
    for spec in reflection_specs() {
        c.bench_function(&format!("reflect_{:?}", spec.kind), |b| b.iter(|| reflect(&spec, black_box(&v))));
    }
    c.bench_function("find_pq_97_35", |b| b.iter(|| find_pq(black_box(97), black_box(35))));
    let r = reduce_vector();
    c.bench_function("canonical_reduce", |b| b.iter(|| canonical_reduce(black_box(&r), None)));
}

fn existence(c: &mut Criterion) {
    let cfg = SurfaceConfig::default();
    let (v, _) = sample_pair();
    c.bench_function("mu_stable_exists", |b| b.iter(|| mu_stable_exists(black_box(&v), None, &cfg)));
}

fn strata(c: &mut Criterion) {
    let cfg = SurfaceConfig::default();
    for v in strata_vectors() {
        c.bench_function(&format!("verify_min_codim {v}"), |b| b.iter(|| verify_min_codim(black_box(&v), 6, &cfg)));
    }
}

fn walls(c: &mut Criterion) {
    let mut group = c.benchmark_group("walls");
    group.sample_size(10);
    let v = wall_vector();
    let cfg = WallConfig::default();
    group.bench_function("candidate_walls", |b| b.iter(|| candidate_walls(black_box(&v), &cfg)));
    group.bench_function("chamber_representative", |b| b.iter(|| chamber_representative(black_box(&v), &cfg)));
    group.finish();
}

criterion_group!(benches, lattice, transforms, existence, strata, walls);
criterion_main!(benches);
