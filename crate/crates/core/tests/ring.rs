use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use snt_core::ring::linalg::{rank, solve_linear};
use snt_core::ring::{smith_form_t, Field, Matrix, Scalar, TPolyMatrix, TruncPoly};

fn scalar(f: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match f {
        Field::Rational => f.from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)).unwrap(),
        Field::Prime(p) => f.from_i64(rng.gen_range(0..p as i64)),
    }
}

fn coeffs(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| scalar(f, rng)).collect()
}

#[test]
fn product_matches_full_degree_product() {
    let f = Field::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..50 {
        let (a, b) = (coeffs(f, 4, &mut rng), coeffs(f, 4, &mut rng));
        let mut full = vec![f.zero(); 7];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                full[i + j] = &full[i + j] + &(x * y);
            }
        }
        let prod = TruncPoly::from_coeffs(f, &a, 4).mul(&TruncPoly::from_coeffs(f, &b, 4));
        assert_eq!(prod.coeffs(), &full[..4]);
    }
}

#[test]
fn unit_inverse_multiplies_back() {
    let f = Field::Rational;
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..20 {
        let mut c = coeffs(f, 5, &mut rng);
        if c[0].is_zero() {
            c[0] = f.one();
        }
        let u = TruncPoly::from_coeffs(f, &c, 5);
        assert!(u.mul(&u.inv().unwrap()) == TruncPoly::one(f, 5));
    }
    assert!(TruncPoly::t_pow(f, 1, 5).inv().is_err());
}

#[test]
fn smith_form_multiplies_back() {
    let f = Field::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    for _ in 0..30 {
        let a = TPolyMatrix::from_fn(f, 3, 3, 3, |_, _| {
            let v = rng.gen_range(0..3);
            TruncPoly::from_coeffs(f, &coeffs(f, 3, &mut rng), 3).shift(v)
        });
        let s = smith_form_t(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert!(s.exponents.windows(2).all(|w| w[0] <= w[1]));
        for (i, &e) in s.exponents.iter().enumerate() {
            let d = s.d.get(i, i);
            if e < 3 {
                assert_eq!(d.valuation(), e);
            } else {
                assert!(d.is_zero());
            }
        }
        assert!(s.u.inverse().is_ok() && s.v.inverse().is_ok());
    }
}

#[test]
fn linear_solve_substitution() {
    let f = Field::Rational;
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for _ in 0..20 {
        let a = Matrix::from_fn(f, 4, 6, |_, _| scalar(f, &mut rng));
        let x0 = coeffs(f, 6, &mut rng);
        let at = a.transpose();
        let b = at.apply(&x0);
        let sol = solve_linear(&a, &b).unwrap();
        assert_eq!(at.apply(sol.particular().unwrap()), b);
        assert_eq!(sol.kernel().len(), 6 - rank(&a));
        for k in sol.kernel() {
            assert!(at.apply(k).iter().all(Scalar::is_zero));
        }
    }
}

#[test]
fn characteristic_two_rejected() {
    assert!(Field::prime(2).is_err());
    assert!(Field::prime(9).is_err());
}
