use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gwmirror_core::oracle::{lines_on_hypersurface, twisted_integral_localized, WeightVector};
use gwmirror_core::{quintic_table, verify_mirror_identity, EmbeddingModel};
use std::hint::black_box;

fn quintic(c: &mut Criterion) {
    let mut g = c.benchmark_group("quintic_table");
    g.sample_size(10);
    for order in [4, 6, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &order| {
            b.iter(|| quintic_table(black_box(order)).unwrap())
        });
    }
    g.finish();
}

fn embedding(c: &mut Criterion) {
    c.bench_function("verify_conic_d6", |b| {
        b.iter(|| verify_mirror_identity(EmbeddingModel::Conic, black_box(6)).unwrap())
    });
}

fn localization(c: &mut Criterion) {
    let w = WeightVector::from_ints(&[1, 4, -9, 14, 23]).unwrap();
    c.bench_function("localize_quintic_d2", |b| {
        b.iter(|| twisted_integral_localized(4, &[5], 2, black_box(&w)).unwrap())
    });
}

fn schubert(c: &mut Criterion) {
    let mut g = c.benchmark_group("lines_on_hypersurface");
    for (l, n) in [(3, 3), (5, 4), (7, 5), (9, 6)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("l{l}_n{n}")), &(l, n), |b, &(l, n)| {
            b.iter(|| lines_on_hypersurface(black_box(l), n))
        });
    }
    g.finish();
}

criterion_group!(benches, quintic, embedding, localization, schubert);
criterion_main!(benches);
