use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use simulmeas_bench::{observables, povm_corpus, state, SEED};
use simulmeas_core::bloch::outcome_probability;
use simulmeas_core::rng::derive_rng;
use simulmeas_core::sampler::sample_valid_povm_with;
use simulmeas_core::sim::{mle_estimate, MarginalCounts};
use simulmeas_core::{build_channel, optimal_povm, region_sweep, AccuracyPair, Observable, SweepConfig};

fn probabilities(c: &mut Criterion) {
    let obs = observables(FRAC_PI_3);
    let corpus = povm_corpus(&obs, 256);
    let rho = state();
    c.bench_function("outcome_probability/256 povms", |b| {
        b.iter(|| {
            let mut total = 0.0;
            for povm in &corpus {
                for (_, e) in povm.iter() {
                    total += outcome_probability(black_box(&rho), e);
                }
            }
            total
        })
    });
}

fn sampling(c: &mut Criterion) {
    let obs = observables(FRAC_PI_3);
    let mut rng = derive_rng(SEED, 1);
    c.bench_function("sample_valid_povm", |b| {
        b.iter(|| sample_valid_povm_with(black_box(&obs), &mut rng, None).unwrap())
    });
    let corpus = povm_corpus(&obs, 256);
    c.bench_function("accuracies/256 povms", |b| {
        b.iter(|| corpus.iter().map(|p| AccuracyPair::from_povm(p, &obs).unwrap().x_a).sum::<f64>())
    });
}

fn estimation(c: &mut Criterion) {
    let obs = observables(FRAC_PI_3);
    let channel = build_channel(&optimal_povm(&obs), &obs, Observable::A).unwrap();
    let counts = MarginalCounts { plus: 6_123, minus: 3_877 };
    c.bench_function("mle_estimate", |b| b.iter(|| mle_estimate(black_box(&channel), black_box(counts)).unwrap()));
}

fn sweep(c: &mut Criterion) {
    let obs = observables(FRAC_PI_6);
    let cfg = SweepConfig { grid_size: 5, restarts: 4, seed: SEED };
    let mut group = c.benchmark_group("region_sweep");
    group.sample_size(10);
    group.bench_function("grid 5", |b| b.iter(|| region_sweep(black_box(&obs), &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, probabilities, sampling, estimation, sweep);
criterion_main!(benches);
