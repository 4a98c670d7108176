//! Reproducible sampling in `Sp(M, t)` as (radical part) · (Levi part).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lie::lie_algebra_basis;
use super::membership::SntAutomorphism;
use super::{levels, Level};
use crate::error::{Error, Result};
use crate::ring::linalg::{inverse, left_kernel};
use crate::ring::{Field, Matrix, Scalar};
use crate::snt::{decompose, Decomposition, SntModule};

pub(crate) fn random_scalar(f: Field, rng: &mut impl Rng) -> Scalar {
    match f {
        Field::Rational => f.from_i64(rng.gen_range(-2..=2)),
        Field::Prime(p) => f.from_i64(rng.gen_range(0..p as i64)),
    }
}

fn random_symmetric(f: Field, r: usize, rng: &mut impl Rng) -> Matrix {
    let mut s = Matrix::zeros(f, r, r);
    for i in 0..r {
        for j in i..r {
            let x = random_scalar(f, rng);
            s[(i, j)] = x.clone();
            s[(j, i)] = x;
        }
    }
    s
}

/// `[[I, S], [0, I]]` (upper) or `[[I, 0], [S, I]]` (lower) for symmetric `S`.
pub fn symplectic_transvection(s: &Matrix, upper: bool) -> Matrix {
    let f = s.field();
    let r = s.rows();
    let mut m = Matrix::identity(f, 2 * r);
    if upper {
        m.set_block(0, r, s);
    } else {
        m.set_block(r, 0, s);
    }
    m
}

/// Embeds a constant `2r x 2r` symplectic matrix on the generators of `level`, extended t-linearly.
pub(crate) fn embed_level_constant(dec: &Decomposition, level: &Level, a: &Matrix, into: &mut Matrix) {
    let slots = 2 * level.multiplicity();
    for x in 0..slots {
        for y in 0..slots {
            for s in 0..level.length {
                into[(level.slot_index(dec, x, s), level.slot_index(dec, y, s))] = a[(x, y)].clone();
            }
        }
    }
}

/// Product of random symplectic transvections `x ↦ x + c ⟨x, v⟩ v` for the form `gram`.
/// Preserves the form but not, in general, any t-action.
pub fn random_symplectic(gram: &Matrix, steps: usize, rng: &mut impl Rng) -> Matrix {
    let f = gram.field();
    let n = gram.rows();
    let mut p = Matrix::identity(f, n);
    for _ in 0..steps {
        let v: Vec<Scalar> = (0..n).map(|_| random_scalar(f, rng)).collect();
        let c = random_scalar(f, rng);
        let col = gram.mul(&Matrix::from_rows(f, n, std::slice::from_ref(&v)).expect("row").transpose());
        let row = Matrix::from_rows(f, n, &[v]).expect("row");
        p = p.mul(&Matrix::identity(f, n).add(&col.mul(&row).scale(&c)));
    }
    p
}

fn to_module(dec: &Decomposition, g_std: &Matrix) -> Matrix {
    dec.to_standard.mul(g_std).mul(&dec.from_standard)
}

/// Block-diagonal lift of random elements of `Sp_{2r_i}(F)`, one per level, in `M` coordinates.
pub fn random_levi_element(dec: &Decomposition, rng: &mut impl Rng) -> Matrix {
    let f = dec.from_standard.field();
    let n = dec.from_standard.rows();
    let mut h = Matrix::identity(f, n);
    for level in levels(dec) {
        let r = level.multiplicity();
        let mut a = Matrix::identity(f, 2 * r);
        for step in 0..4 {
            a = a.mul(&symplectic_transvection(&random_symmetric(f, r, rng), step % 2 == 0));
        }
        embed_level_constant(dec, &level, &a, &mut h);
    }
    to_module(dec, &h)
}

/// `exp(S)` for nilpotent `S`, when every needed factorial is invertible.
pub fn exp_nilpotent(s: &Matrix) -> Option<Matrix> {
    let f = s.field();
    let n = s.rows();
    let mut acc = Matrix::identity(f, n);
    let mut term = Matrix::identity(f, n);
    for j in 1..=n + 1 {
        term = term.mul(s);
        if term.is_zero() {
            return Some(acc);
        }
        let jj = f.from_i64(j as i64);
        term = term.scale(&jj.inv()?);
        acc = acc.add(&term);
    }
    None
}

/// Cayley transform `(I + S/2)(I - S/2)^{-1}`; maps the Lie algebra into the group where defined.
pub fn cayley(s: &Matrix) -> Option<Matrix> {
    let f = s.field();
    let half = f.from_ratio(1, 2).ok()?;
    let id = Matrix::identity(f, s.rows());
    let hs = s.scale(&half);
    Some(id.add(&hs).mul(&inverse(&id.sub(&hs)).ok()?))
}

/// A random element of `sp(M, t)` whose reduced diagonal blocks vanish, in standard coordinates.
fn radical_lie_element(dec: &Decomposition, rng: &mut impl Rng) -> Matrix {
    let std = dec.standard_module();
    let f = std.field();
    let basis = lie_algebra_basis(&std);
    let reps: Vec<Vec<usize>> = levels(dec).iter().map(|l| l.reps(dec)).collect();
    let rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|s| reps.iter().flat_map(|r| r.iter().flat_map(|&a| r.iter().map(move |&b| s[(a, b)].clone()))).collect())
        .collect();
    let width = rows.first().map_or(0, |r| r.len());
    let e = Matrix::from_rows(f, width, &rows).expect("rectangular");
    let mut s = Matrix::zeros(f, std.dim(), std.dim());
    for c in left_kernel(&e) {
        let w = random_scalar(f, rng);
        for (cl, b) in c.iter().zip(&basis) {
            if !cl.is_zero() {
                s = s.add(&b.scale(&(cl * &w)));
            }
        }
    }
    s
}

/// A random element of the unipotent radical, via `exp` or (in small characteristic) the Cayley transform.
pub fn random_radical_element(dec: &Decomposition, rng: &mut impl Rng) -> Matrix {
    for _ in 0..16 {
        let s = radical_lie_element(dec, rng);
        if let Some(u) = exp_nilpotent(&s).or_else(|| cayley(&s)) {
            return to_module(dec, &u);
        }
    }
    Matrix::identity(dec.from_standard.field(), dec.from_standard.rows())
}

/// Deterministic sample `u · h` with `u` in the unipotent radical and `h` a Levi element.
pub fn random_element(m: &SntModule, seed: u64) -> Result<SntAutomorphism> {
    let dec = decompose(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(m, &dec, &mut rng)
}

pub fn sample_with(m: &SntModule, dec: &Decomposition, rng: &mut impl Rng) -> Result<SntAutomorphism> {
    let u = random_radical_element(dec, rng);
    let h = random_levi_element(dec, rng);
    SntAutomorphism::new(m, u.mul(&h)).map_err(|_| Error::InvalidInput("sampler produced a non-member".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spgroup::blocks::unipotent_radical_test;
    use crate::spgroup::membership::is_member;

    #[test]
    fn deterministic_and_valid() {
        let m = SntModule::standard(Field::Rational, &[2, 1]).unwrap();
        let a = random_element(&m, 3).unwrap();
        let b = random_element(&m, 3).unwrap();
        assert_eq!(a, b);
        let c = random_element(&m, 4).unwrap();
        assert!(is_member(&m, a.compose(&c).matrix()).unwrap());
    }

    #[test]
    fn transvections_preserve_form() {
        let m = SntModule::standard(Field::prime(5).unwrap(), &[2, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_symplectic(m.gram(), 6, &mut rng);
        assert_eq!(p.mul(m.gram()).mul(&p.transpose()), *m.gram());
    }

    #[test]
    fn radical_and_levi_parts() {
        let f = Field::prime(3).unwrap();
        let m = SntModule::standard(f, &[2, 1]).unwrap();
        let d = decompose(&m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let u = random_radical_element(&d, &mut rng);
            assert!(is_member(&m, &u).unwrap());
            assert!(unipotent_radical_test(&m, &d, &u).unwrap());
            let h = random_levi_element(&d, &mut rng);
            assert!(is_member(&m, &h).unwrap());
        }
    }
}
