use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dirac_coulomb::oracle::{default_grid, find_eigenvalues, gauss_laguerre, quadrature_norm, residual_check};
use dirac_coulomb::{
    bound_levels, build_bound_state, effective_kappa, presets, QuantumNumbers, Sector, ShootingConfig,
};

fn spectrum(c: &mut Criterion) {
    let cfg = presets::fig3a();
    let pairs: Vec<QuantumNumbers> = [-9, -7, -5, -3, -1, 1, 3, 5, 7, 9]
        .into_iter()
        .flat_map(|two_k| (0..=8).map(move |n| QuantumNumbers::circular(n, two_k).unwrap()))
        .collect();
    c.bench_function("fig3a sweep", |b| {
        b.iter(|| pairs.iter().map(|q| bound_levels(&cfg, q).map_or(0, |l| l.len())).sum::<usize>())
    });
}

fn wavefunction(c: &mut Criterion) {
    let q = QuantumNumbers::circular(3, -3).unwrap();
    let state = build_bound_state(&presets::fig3a(), &q, Sector::Antiparticle).unwrap();
    let grid = default_grid(&state);
    c.bench_function("build state", |b| {
        b.iter(|| build_bound_state(black_box(&presets::fig3a()), &q, Sector::Antiparticle))
    });
    c.bench_function("sample 600 points", |b| b.iter(|| grid.iter().map(|&r| state.g(r) + state.f(r)).sum::<f64>()));
    c.bench_function("residual check", |b| b.iter(|| residual_check(&state, &grid)));
    c.bench_function("quadrature norm", |b| b.iter(|| quadrature_norm(&state)));
    c.bench_function("gauss-laguerre 40", |b| b.iter(|| gauss_laguerre(black_box(2.66), 40)));
}

fn shooting(c: &mut Criterion) {
    let cfg = presets::fig3a();
    let q = QuantumNumbers::circular(0, -3).unwrap();
    let shoot = ShootingConfig::new((-1.009, -0.9));
    let mut group = c.benchmark_group("shooting");
    group.sample_size(10);
    group.bench_function("fig3a k=-3/2 ladder", |b| {
        b.iter(|| find_eigenvalues(&cfg, effective_kappa(&q, &cfg), &shoot, 3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, spectrum, wavefunction, shooting);
criterion_main!(benches);
