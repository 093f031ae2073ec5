use criterion::{criterion_group, criterion_main, Criterion};
use nl4s_core::field::FieldSampler;
use nl4s_core::ground_state::{gn_ratio_batch, gn_ratio_batch_seq};
use nl4s_core::GridSpec;

fn bench_gn_batch(c: &mut Criterion) {
    let grid = GridSpec::new(1, 1024, 20.0).unwrap();
    let mut sampler = FieldSampler::new(99);
    let fields: Vec<_> = (0..256).map(|_| sampler.localized(grid)).collect();
    c.bench_function("gn_ratio_batch_par", |b| {
        b.iter(|| gn_ratio_batch(&fields, 8.0))
    });
    c.bench_function("gn_ratio_batch_seq", |b| {
        b.iter(|| gn_ratio_batch_seq(&fields, 8.0))
    });
}

criterion_group!(benches, bench_gn_batch);
criterion_main!(benches);
