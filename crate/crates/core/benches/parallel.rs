//! Benchmarks for the data-parallel kernels.
//!
//! Each group pits the library entry point (rayon-parallel under the
//! default `parallel` feature) against a plain sequential loop over the
//! same per-item primitive. Run `cargo bench --no-default-features` to
//! time the fully sequential build of the library paths themselves.

use criterion::{criterion_group, criterion_main, Criterion};
use liewrap::multiplier::{transfer_star_star, MultiplierSymbol};
use liewrap::norms::{lp_norm_on_central, Lp};
use liewrap::orbit::orbit_average;
use liewrap::rootdata::{GroupId, RootSystem};
use liewrap::wrap::{euclid_fourier, wrap_series, AdInvariantFunction};
use liewrap::QuadSpec;
use std::hint::black_box;

fn bench_wrap_series(c: &mut Criterion) {
    let rs = RootSystem::new(GroupId::Su2);
    let mu = AdInvariantFunction::gaussian(1.0);
    let spec = QuadSpec::default();
    let cutoff = 16.0;
    let weights = rs.enumerate_dominant_weights(cutoff);

    let mut group = c.benchmark_group("wrap_series_su2");
    group.sample_size(10);
    group.bench_function("library", |b| {
        b.iter(|| black_box(wrap_series(&rs, &mu, cutoff, &spec).unwrap()))
    });
    group.bench_function("sequential_outer", |b| {
        b.iter(|| {
            let coeffs: Vec<_> = weights
                .iter()
                .map(|w| euclid_fourier(&rs, &mu, w.shifted(&rs), &spec).unwrap())
                .collect();
            black_box(coeffs)
        })
    });
    group.finish();
}

fn bench_transfer(c: &mut Criterion) {
    let rs = RootSystem::new(GroupId::Su3);
    let psi = MultiplierSymbol::gaussian(0.5);
    let spec = QuadSpec {
        tol: 1e-7,
        ..QuadSpec::default()
    };
    let cutoff = 4.0;
    let weights = rs.enumerate_dominant_weights(cutoff);

    let mut group = c.benchmark_group("orbit_transfer_su3");
    group.sample_size(10);
    group.bench_function("library", |b| {
        b.iter(|| black_box(transfer_star_star(&rs, &psi, cutoff, &spec).unwrap()))
    });
    group.bench_function("sequential_outer", |b| {
        b.iter(|| {
            let vals: Vec<f64> = weights
                .iter()
                .map(|w| orbit_average(&rs, |x| psi.eval(x), w.shifted(&rs), &spec).unwrap())
                .collect();
            black_box(vals)
        })
    });
    group.finish();
}

fn bench_group_norm(c: &mut Criterion) {
    let rs = RootSystem::new(GroupId::Su3);
    let mu = AdInvariantFunction::gaussian(0.8);
    let spec = QuadSpec::default();
    let f = wrap_series(&rs, &mu, 7.0, &spec).unwrap();

    let mut group = c.benchmark_group("group_norm_su3");
    group.sample_size(10);
    group.bench_function("l4_norm", |b| {
        b.iter(|| black_box(lp_norm_on_central(&rs, &f, Lp::P(4.0), &spec).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, bench_wrap_series, bench_transfer, bench_group_norm);
criterion_main!(benches);
