use criterion::{criterion_group, criterion_main, Criterion};
use nl4s_core::fft::to_spectral;
use nl4s_core::field::FieldSampler;
use nl4s_core::i_operator::{sweep_energies, sweep_energies_seq};
use nl4s_core::nonlin::NonlinearityParams;
use nl4s_core::GridSpec;

fn bench_sweep(c: &mut Criterion) {
    let grid = GridSpec::new(1, 2048, 20.0).unwrap();
    let mut sampler = FieldSampler::new(7);
    let snaps: Vec<_> = (0..48)
        .map(|_| {
            let f = sampler.localized(grid);
            let s = to_spectral(&f);
            (f, s)
        })
        .collect();
    let n_list: Vec<f64> = vec![4.0, 8.0, 16.0, 32.0, 64.0];
    let params = NonlinearityParams::mass_critical(1);
    c.bench_function("sweep_energies_par", |b| {
        b.iter(|| sweep_energies(&snaps, &n_list, 1.5, &params))
    });
    c.bench_function("sweep_energies_seq", |b| {
        b.iter(|| sweep_energies_seq(&snaps, &n_list, 1.5, &params))
    });
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
