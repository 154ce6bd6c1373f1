//! Benchmarks comparing the default (rayon-parallel when the `parallel`
//! feature is on) matrix product against the always-serial implementation,
//! plus the end-to-end reconstruction pipeline on the largest fixture.
//!
//! Run with `cargo bench`, or `cargo bench --no-default-features` to measure
//! the build where the default path itself is serial.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tannaka::exactlin::{compose, compose_serial, Matrix, Scalar};
use tannaka::model::{model_from_str, reconstruct_model};

/// Deterministic dense matrix with small rational entries, so products
/// exercise bignum arithmetic without unbounded coefficient growth.
fn dense(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut state = seed | 1;
    Matrix::from_fn(rows, cols, |_, _| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        Scalar::ratio((state % 9) as i64 - 4, (state % 3) as i64 + 1)
    })
}

fn bench_compose(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose");
    for size in [16usize, 48, 96] {
        let a = dense(size, size, 0x9e3779b9);
        let b = dense(size, size, 0x6a09e667);
        group.bench_with_input(BenchmarkId::new("default", size), &size, |bench, _| {
            bench.iter(|| compose(&a, &b).unwrap());
        });
        group.bench_with_input(BenchmarkId::new("serial", size), &size, |bench, _| {
            bench.iter(|| compose_serial(&a, &b).unwrap());
        });
    }
    group.finish();
}

fn bench_reconstruct(c: &mut Criterion) {
    let path = format!("{}/tests/fixtures/fixture_z2_k2.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    let model = model_from_str(&text).unwrap();
    c.bench_function("reconstruct/z2_k2", |bench| {
        bench.iter(|| reconstruct_model(&model).unwrap());
    });
}

criterion_group!(benches, bench_compose, bench_reconstruct);
criterion_main!(benches);
