use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use snt_core::analytic::{eisenstein_direct, eisenstein_q, theta_colinear, verify_identity, IntegralLattice, SiegelPoint, TruncationPlan};

fn bench_eisenstein(c: &mut Criterion) {
    let tau = Complex64::new(0.25, 1.5);
    c.bench_function("E4 q-expansion", |b| b.iter(|| eisenstein_q(tau, 4).unwrap()));
    c.bench_function("E4 lattice sum", |b| b.iter(|| eisenstein_direct(tau, 4).unwrap()));
}

fn bench_theta(c: &mut Criterion) {
    let e8 = IntegralLattice::e8();
    let p = SiegelPoint::new(Complex64::new(0.0, 2.0), Complex64::new(0.0, 0.5), Complex64::new(0.0, 2.0)).unwrap();
    c.bench_function("colinear theta E8", |b| b.iter(|| theta_colinear(&e8, &p, &TruncationPlan::default()).unwrap()));
}

fn bench_identity(c: &mut Criterion) {
    let e8 = [IntegralLattice::e8()];
    let p = SiegelPoint::new(Complex64::new(0.0, 3.0), Complex64::new(0.3, 0.5), Complex64::new(0.0, 2.5)).unwrap();
    let mut g = c.benchmark_group("verify_identity");
    g.sample_size(20);
    g.bench_function("E8 accelerated", |b| b.iter(|| verify_identity(&e8, &p, 8, 1e-8, false, None).unwrap()));
    g.bench_function("E8 with direct lhs", |b| b.iter(|| verify_identity(&e8, &p, 8, 1e-8, true, None).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_eisenstein, bench_theta, bench_identity);
criterion_main!(benches);
