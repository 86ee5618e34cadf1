use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lclm_bench::{binomial, dense_order4, ring, two_pieces};
use lclm_core::decomp::lclm_decompose;
use lclm_core::pcurv::pcurvature;

fn pcurv(c: &mut Criterion) {
    let mut g = c.benchmark_group("pcurvature");
    for p in [3u32, 5, 7, 11] {
        let r = ring(p);
        let l = binomial(&r, 3);
        g.bench_with_input(BenchmarkId::from_parameter(p), &l, |b, l| b.iter(|| pcurvature(&r, black_box(l)).unwrap()));
    }
    g.finish();
}

fn decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose_two_pieces");
    for p in [3u32, 5, 7, 11] {
        let r = ring(p);
        let l = two_pieces(&r);
        g.bench_with_input(BenchmarkId::from_parameter(p), &l, |b, l| b.iter(|| lclm_decompose(&r, black_box(l), 0).unwrap()));
    }
    g.finish();

    let r = ring(5);
    let mut g = c.benchmark_group("decompose_order4_p5");
    g.sample_size(10);
    let l = binomial(&r, 4);
    g.bench_function("binomial", |b| b.iter(|| lclm_decompose(&r, black_box(&l), 0).unwrap()));
    let l = dense_order4(&r);
    g.bench_function("dense", |b| b.iter(|| lclm_decompose(&r, black_box(&l), 0).unwrap()));
    g.finish();
}

criterion_group!(benches, pcurv, decompose);
criterion_main!(benches);
