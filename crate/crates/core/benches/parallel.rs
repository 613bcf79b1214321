use std::f64::consts::PI;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polarlorentz::batch::{map_indices, map_indices_sequential, wigner_sweep, wigner_sweep_sequential, LinRange};
use polarlorentz::matrix::lorentz_residual;
use polarlorentz::{compose, FilterChain, FilterElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("wigner_sweep");
    for n in [20usize, 100, 300] {
        let etas = LinRange::new(0.1, 3.0, n).unwrap();
        let thetas = LinRange::new(0.05, PI - 0.05, n).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", n * n), &n, |b, _| {
            b.iter(|| wigner_sweep(&etas, &thetas))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n * n), &n, |b, _| {
            b.iter(|| wigner_sweep_sequential(&etas, &thetas))
        });
    }
    group.finish();
}

fn random_chains(count: usize) -> Vec<FilterChain> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=8);
            let elements = (0..len)
                .map(|_| match rng.gen_range(0..3) {
                    0 => FilterElement::attenuator(rng.gen_range(-2.0..2.0), rng.gen_range(-PI..PI)).unwrap(),
                    1 => FilterElement::rotator(rng.gen_range(-PI..PI)).unwrap(),
                    _ => FilterElement::phase_shifter(rng.gen_range(-PI..PI)).unwrap(),
                })
                .collect();
            FilterChain::from_elements(elements).unwrap()
        })
        .collect()
}

fn chain_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain_lorentz_check");
    for count in [500usize, 10_000] {
        let chains = random_chains(count);
        let check = |i: usize| lorentz_residual(&compose(&chains[i]).mueller);
        group.bench_with_input(BenchmarkId::new("parallel", count), &count, |b, &n| {
            b.iter(|| map_indices(n, check))
        });
        group.bench_with_input(BenchmarkId::new("sequential", count), &count, |b, &n| {
            b.iter(|| map_indices_sequential(n, check))
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, chain_checks);
criterion_main!(benches);
