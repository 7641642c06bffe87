use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use deltanls::boundstate::{energy, mass};
use deltanls::groundstate::decide;
use deltanls::minimizer::{discrete_energy, normalized_gradient_flow, Grid};
use deltanls::thresholds::{count_bound_states, invert_mass, mu_tilde, BranchSelector};
use deltanls::{DiscreteField, FlowConfig, Initialization};

fn closed_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("mass_map");
    for &(p, alpha) in &[(3.0, -1.0), (5.0, 1.0), (6.0, -1.0)] {
        g.bench_with_input(BenchmarkId::new("mass", p), &(p, alpha), |b, &(p, a)| {
            b.iter(|| mass(black_box(p), black_box(a), black_box(4.0)))
        });
        g.bench_with_input(BenchmarkId::new("energy", p), &(p, alpha), |b, &(p, a)| {
            b.iter(|| energy(black_box(p), black_box(a), black_box(4.0)))
        });
    }
    g.finish();
}

fn inversion(c: &mut Criterion) {
    c.bench_function("invert_mass/p3_unique", |b| {
        b.iter(|| invert_mass(3.0, -1.0, black_box(2.0), BranchSelector::Unique))
    });
    c.bench_function("invert_mass/p5_upper", |b| {
        b.iter(|| invert_mass(5.0, 1.0, black_box(3.0), BranchSelector::UpperBranch))
    });
    c.bench_function("count_bound_states/p5", |b| {
        b.iter(|| count_bound_states(5.0, 1.0, black_box(3.0)))
    });
    c.bench_function("mu_tilde/p5", |b| b.iter(|| mu_tilde(5.0, black_box(1.0))));
    c.bench_function("decide/p5", |b| b.iter(|| decide(5.0, 1.0, black_box(3.2))));
}

fn discrete(c: &mut Criterion) {
    let mut g = c.benchmark_group("discrete");
    for &n in &[1024usize, 8192] {
        let grid = Grid::new(20.0, n).unwrap();
        let field = DiscreteField::from_fn(grid, |x| (-x * x).exp()).unwrap();
        g.bench_with_input(BenchmarkId::new("energy", n), &field, |b, f| {
            b.iter(|| discrete_energy(black_box(f), 4.0, 1.0))
        });
    }
    g.sample_size(10);
    let cfg = FlowConfig {
        init: Initialization::HalfSoliton,
        ..FlowConfig::default()
    };
    let grid = Grid::fitted(0.2746530721670274, 4.0, 1024).unwrap();
    g.bench_function("flow/p4_n1024", |b| {
        b.iter(|| normalized_gradient_flow(4.0, 1.0, black_box(6.0), grid, &cfg))
    });
    g.finish();
}

criterion_group!(benches, closed_forms, inversion, discrete);
criterion_main!(benches);
