use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spectra_forge_core::cyclotomic::{compute_sa, laba_spectrum};
use spectra_forge_core::frames::{self, ExponentialSystem};
use spectra_forge_core::measure::{AtomicMeasure, EvalPolicy, Measure, SelfSimilarMeasure};
use spectra_forge_core::rational::ratio;
use spectra_forge_core::spectra::{is_bizero, jp_scan, selfsimilar_spectrum, uniform_grid};
use spectra_forge_core::FrequencySet;
use std::hint::black_box;

fn cyclotomic(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute_sa");
    for max in [16u64, 64, 128] {
        let set: Vec<u64> = (0..=max).step_by(3).chain([max]).collect();
        g.bench_with_input(BenchmarkId::from_parameter(max), &set, |b, s| {
            b.iter(|| compute_sa(black_box(s)))
        });
    }
    g.finish();
    let tile = [0u64, 1, 8, 9, 16, 17];
    c.bench_function("laba_spectrum", |b| {
        b.iter(|| laba_spectrum(black_box(&tile)).unwrap())
    });
}

fn frame_bounds(c: &mut Criterion) {
    let mut g = c.benchmark_group("frame_bounds");
    for n in [4i64, 16, 64] {
        let atoms: Vec<i64> = (0..n)
            .map(|k| k * k % (3 * n))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let mu = AtomicMeasure::uniform_integer(&atoms).unwrap();
        let freqs = FrequencySet::new((0..2 * n).map(|k| ratio(k, 2 * n + 1)).collect());
        let sys = ExponentialSystem::new(mu, freqs);
        g.bench_with_input(BenchmarkId::from_parameter(n), &sys, |b, s| {
            b.iter(|| frames::frame_bounds(black_box(s)))
        });
    }
    g.finish();
}

fn selfsimilar(c: &mut Criterion) {
    let mu = SelfSimilarMeasure::new(vec![0, 2], 4).unwrap();
    let policy = EvalPolicy::default();
    let lambda = selfsimilar_spectrum(&mu, 5).unwrap();
    let m = Measure::SelfSimilar(mu);
    let grid = uniform_grid(0.0, 1.0, 32);
    let mut g = c.benchmark_group("quarter_cantor_32");
    g.sample_size(10);
    g.bench_function("jp_scan", |b| {
        b.iter(|| jp_scan(&m, black_box(&lambda), &grid, &policy))
    });
    g.bench_function("is_bizero", |b| {
        b.iter(|| is_bizero(black_box(&lambda), &m, &policy).unwrap())
    });
    g.finish();
}

criterion_group!(benches, cyclotomic, frame_bounds, selfsimilar);
criterion_main!(benches);
