use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use snt_core::orbits::{census, random_orthogonal, witt_lift, OrbitSetting, OrthSpace, PolyVec};
use snt_core::snt::decompose;
use snt_core::spgroup::random_symplectic;
use snt_core::{Field, SntModule, TruncPoly};

fn bench_decompose(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, f) in [("Q", Field::Rational), ("F5", Field::prime(5).unwrap())] {
        let std = SntModule::standard(f, &[3, 2, 1]).unwrap();
        let m = std.base_change(&random_symplectic(std.gram(), 2 * std.dim(), &mut rng)).unwrap();
        c.bench_function(&format!("decompose H3+H2+H1 over {name}"), |b| b.iter(|| decompose(&m).unwrap()));
    }
}

fn bench_witt_lift(c: &mut Criterion) {
    let f = Field::prime(5).unwrap();
    let k = 4;
    let v = OrthSpace::diagonal(f, &[1, 2, 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a: Vec<PolyVec> = vec![
        vec![TruncPoly::from_i64(f, &[1, 1], k), TruncPoly::from_i64(f, &[0, 2], k), TruncPoly::from_i64(f, &[1], k)],
        vec![TruncPoly::from_i64(f, &[0], k), TruncPoly::from_i64(f, &[1, 0, 3], k), TruncPoly::from_i64(f, &[2], k)],
    ];
    let g = random_orthogonal(&v, k, &mut rng);
    let b: Vec<PolyVec> = a.iter().map(|x| snt_core::orbits::setting::poly_apply(x, &g)).collect();
    let types = [4, 2];
    c.bench_function("witt_lift m=2 K=4 over F5", |bch| bch.iter(|| witt_lift(&v, &a, &b, &types).unwrap()));
}

fn bench_census(c: &mut Criterion) {
    let f3 = Field::prime(3).unwrap();
    let s = OrbitSetting::standard(SntModule::standard(f3, &[2]).unwrap(), OrthSpace::hyperbolic(f3)).unwrap();
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("F3 H2 hyperbolic", |b| b.iter(|| census(&s, false).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_decompose, bench_witt_lift, bench_census);
criterion_main!(benches);
