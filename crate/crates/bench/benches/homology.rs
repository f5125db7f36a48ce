use criterion::{criterion_group, criterion_main, Criterion};
use hochcyc_bench::{algebra, bundle};
use hochcyc_core::exactlin::rank;
use hochcyc_core::hochschild::{hc, hh, hochschild_cyclic_module, mcg_action_report, DEFAULT_ORDER_BOUND};
use hochcyc_core::torusdiff::{check_group_axioms, TorusDiffElement};
use std::hint::black_box;

fn construction(c: &mut Criterion) {
    let s3 = algebra("Q[S3]");
    c.bench_function("bundle Q[S3] through degree 3", |b| {
        b.iter(|| hochschild_cyclic_module(black_box(&s3), 3).unwrap())
    });
    let d = algebra("D(Z2)");
    c.bench_function("bundle D(Z2) through degree 3", |b| {
        b.iter(|| hochschild_cyclic_module(black_box(&d), 3).unwrap())
    });
}

fn homology(c: &mut Criterion) {
    let s3 = bundle("Q[S3]", 3);
    c.bench_function("rank of b_3 on Q[S3]", |b| b.iter(|| rank(black_box(s3.b(3)))));
    c.bench_function("HH_0..2 of Q[S3]", |b| b.iter(|| hh(black_box(&s3), 2).unwrap()));
    let q = bundle("Q", 7);
    c.bench_function("HC_0..6 of Q", |b| b.iter(|| hc(black_box(&q), 6).unwrap()));
    let d = bundle("D(Z2)", 3);
    c.bench_function("action report D(Z2) through degree 2", |b| {
        b.iter(|| mcg_action_report(black_box(&d), 2, DEFAULT_ORDER_BOUND).unwrap())
    });
}

fn torus(c: &mut Criterion) {
    let g: TorusDiffElement = "(a=1/5, n=3; x=2/7, eps=-1)".parse().unwrap();
    let h: TorusDiffElement = "(a=3/4, n=-2; x=1/3, eps=+1)".parse().unwrap();
    c.bench_function("torus multiply", |b| b.iter(|| black_box(&g).multiply(black_box(&h))));
    c.bench_function("torus selfcheck 1000", |b| b.iter(|| check_group_axioms(1000, black_box(0))));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = construction, homology, torus
}
criterion_main!(benches);
