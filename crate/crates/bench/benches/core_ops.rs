use criterion::{criterion_group, criterion_main, Criterion};
use nilg2::builtin;
use nilg2::nilgroup::random_rational_elements;
use nilg2::resring::ResolutionRing;
use nilg2::{g2, CochainComplex};
use std::hint::black_box;

fn bench_invariant_betti(c: &mut Criterion) {
    c.bench_function("invariant_complex_betti", |b| {
        b.iter(|| {
            let complex = CochainComplex::invariant(builtin::cdga(), &builtin::involution());
            black_box(complex.betti())
        })
    });
}

fn bench_bch_products(c: &mut Criterion) {
    let group = builtin::nilpotent_group();
    let points = random_rational_elements(7, 256, 11);
    c.bench_function("bch_products_128", |b| {
        b.iter(|| {
            for pair in points.chunks_exact(2) {
                black_box(group.bch_product(&pair[0], &pair[1]));
            }
        })
    });
}

fn bench_gram(c: &mut Criterion) {
    let phi = builtin::g2_form();
    c.bench_function("gram_from_threeform", |b| {
        b.iter(|| black_box(g2::gram_from_threeform(&phi).unwrap()))
    });
}

fn bench_ring_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolution");
    group.sample_size(10);
    group.bench_function("ring_build", |b| {
        b.iter(|| black_box(ResolutionRing::build().unwrap()))
    });
    let ring = ResolutionRing::build().unwrap();
    group.bench_function("ring_audit", |b| {
        b.iter(|| black_box(ring.audit_associativity().is_ok()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_invariant_betti,
    bench_bch_products,
    bench_gram,
    bench_ring_build
);
criterion_main!(benches);
