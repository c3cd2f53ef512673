// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zeno_core::analysis::{zeno_sum_closed_form, zeno_sum_direct};
use zeno_core::{
    enumerate_branches, numeric_limit_probe, propagate_projected, recoherence_demo,
    EvolutionConfig, OverlapSchedule,
};

fn propagation(c: &mut Criterion) {
    let mut group = c.benchmark_group("propagate_projected");
    let schedule = OverlapSchedule::power_law(1.0, 1.0).unwrap();
    for n in [1_000usize, 100_000, 1_000_000] {
        let u = EvolutionConfig::new(1.0, 1.0, n).unwrap().unitary();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| propagate_projected(&u, black_box(&schedule), n).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_branches");
    group.sample_size(10);
    let schedule = OverlapSchedule::constant(0.6).unwrap();
    for n in [8usize, 14, 18] {
        let u = EvolutionConfig::new(1.0, 1.0, n).unwrap().unitary();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate_branches(&u, black_box(&schedule), n).unwrap())
        });
    }
    group.finish();
}

fn zeno_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeno_sum");
    let n = 1 << 20;
    group.bench_function("direct/eta=0.999", |b| {
        b.iter(|| zeno_sum_direct(black_box(0.999), n).unwrap())
    });
    group.bench_function("direct/eta=1-1e-6", |b| {
        b.iter(|| zeno_sum_direct(black_box(1.0 - 1e-6), n).unwrap())
    });
    group.bench_function("closed_form/eta=0.999", |b| {
        b.iter(|| zeno_sum_closed_form(black_box(0.999), n).unwrap())
    });
    group.finish();
}

fn probe(c: &mut Criterion) {
    let mut group = c.benchmark_group("numeric_limit_probe");
    group.sample_size(10);
    let config = EvolutionConfig::new(1.0, 1.0, 1).unwrap();
    for (name, schedule) in [
        (
            "power-law(2,1)",
            OverlapSchedule::power_law(2.0, 1.0).unwrap(),
        ),
        ("constant(0.99)", OverlapSchedule::constant(0.99).unwrap()),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| numeric_limit_probe(black_box(&schedule), &config, 1 << 20).unwrap())
        });
    }
    group.finish();
}

fn register(c: &mut Criterion) {
    c.bench_function("recoherence_demo", |b| b.iter(recoherence_demo));
}

criterion_group!(
    benches,
    propagation,
    enumeration,
    zeno_sums,
    probe,
    register
);
criterion_main!(benches);
