//! Altering `b_1, ..., b_m` modulo `t^{k_i}` so that its Gram matrix matches that of `a_1, ..., a_m` exactly.

use super::setting::{poly_coeffs, OrthSpace, PolyVec};
use crate::error::{Error, Result};
use crate::ring::linalg::rank;
use crate::ring::{solve_rk, Matrix, TPolyMatrix, TruncPoly, Vector};

/// Whether the constant terms of the vectors are linearly independent.
pub fn is_primitive_tuple(vs: &[PolyVec]) -> bool {
    let Some(first) = vs.first() else {
        return true;
    };
    let f = first[0].field();
    let rows: Vec<Vector> = vs.iter().map(|v| poly_coeffs(v, 0)).collect();
    rank(&Matrix::from_rows(f, first.len(), &rows).expect("equal lengths")) == vs.len()
}

fn check_inputs(v: &OrthSpace, a: &[PolyVec], b: &[PolyVec], types: &[usize]) -> Result<usize> {
    if a.len() != b.len() || a.len() != types.len() {
        return Err(Error::DimensionMismatch(format!("{} a's, {} b's, {} types", a.len(), b.len(), types.len())));
    }
    if types.iter().any(|&k| k == 0) || types.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(format!("types {types:?} must satisfy k_1 >= ... >= k_m >= 1")));
    }
    let k = a.first().map_or(1, |x| x[0].order());
    for x in a.iter().chain(b) {
        if x.len() != v.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in a space of dimension {}", x.len(), v.dim())));
        }
        if x.iter().any(|c| c.order() != k) {
            return Err(Error::PrecisionMismatch(k, x[0].order()));
        }
    }
    if types.first().is_some_and(|&k1| k1 > k) {
        return Err(Error::InvalidInput(format!("type {} exceeds precision {k}", types[0])));
    }
    Ok(k)
}

/// Hypothesis check: `(a_i, a_j) ≡ (b_i, b_j) mod t^{min(k_i, k_j)}`.
pub fn grams_agree(v: &OrthSpace, a: &[PolyVec], b: &[PolyVec], types: &[usize]) -> bool {
    let (ga, gb) = (v.gram_poly(a), v.gram_poly(b));
    (0..a.len()).all(|i| {
        (0..a.len()).all(|j| {
            let e = types[i].min(types[j]);
            ga.get(i, j).sub(gb.get(i, j)).valuation() >= e
        })
    })
}

/// Returns `b̃` with `b̃_i ≡ b_i mod t^{k_i}` and `(b̃_i, b̃_j) = (a_i, a_j)` in `F[t]/(t^K)`.
///
/// Each `b̃_r = b_r + t^{k_r} Σ_j h_j c_j`, where `c_j` is dual to `(b̃_1, ..., b̃_{r-1}, b_r)`;
/// the off-diagonal `h_j` are read off directly and `h_r` is the fixed point of
/// `h_r = (D / t^{k_r} - t^{k_r} (H, H)) / 2`.
pub fn witt_lift(v: &OrthSpace, a: &[PolyVec], b: &[PolyVec], types: &[usize]) -> Result<Vec<PolyVec>> {
    let k = check_inputs(v, a, b, types)?;
    if !is_primitive_tuple(a) || !is_primitive_tuple(b) {
        return Err(Error::HypothesisFailed("tuples must be primitive".into()));
    }
    if !grams_agree(v, a, b, types) {
        return Err(Error::HypothesisFailed("Gram matrices differ modulo t^min(k_i, k_j)".into()));
    }
    let f = v.field();
    let half = f.from_ratio(1, 2)?;
    let gram = TPolyMatrix::from_constant(v.gram(), k);
    let mut out: Vec<PolyVec> = Vec::with_capacity(b.len());
    for r in 0..b.len() {
        let kr = types[r];
        let mut beta = out.clone();
        beta.push(b[r].clone());
        let bmat = TPolyMatrix::from_fn(f, k, r + 1, v.dim(), |i, j| beta[i][j].clone());
        let duals = solve_rk(&bmat.mul(&gram), &TPolyMatrix::identity(f, k, r + 1))?
            .ok_or_else(|| Error::HypothesisFailed("no dual system; tuple is not primitive".into()))?;
        let mut h: Vec<TruncPoly> = Vec::with_capacity(r + 1);
        for i in 0..r {
            let d = v.pair_poly(&a[i], &a[r]).sub(&v.pair_poly(&out[i], &b[r]));
            h.push(d.unshift(kr).ok_or_else(|| Error::HypothesisFailed(format!("pairing ({i},{r}) not divisible")))?);
        }
        let d = v.pair_poly(&a[r], &a[r]).sub(&v.pair_poly(&b[r], &b[r]));
        let dk = d.unshift(kr).ok_or_else(|| Error::HypothesisFailed(format!("norm {r} not divisible")))?;
        h.push(TruncPoly::zero(f, k));
        let combo = |h: &[TruncPoly]| -> PolyVec {
            (0..v.dim())
                .map(|c| h.iter().enumerate().fold(TruncPoly::zero(f, k), |acc, (j, hj)| acc.add(&hj.mul(duals.get(c, j)))))
                .collect()
        };
        // each pass fixes at least one more coefficient of h_r, since the correction carries t^{k_r}
        for _ in 0..=k {
            let hv = combo(&h);
            h[r] = dk.sub(&v.pair_poly(&hv, &hv).shift(kr)).scale(&half);
        }
        let hv = combo(&h);
        out.push(b[r].iter().zip(&hv).map(|(x, y)| x.add(&y.shift(kr))).collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;

    fn pv(f: crate::ring::Field, k: usize, c: &[&[i64]]) -> PolyVec {
        c.iter().map(|x| TruncPoly::from_i64(f, x, k)).collect()
    }

    #[test]
    fn already_matching_is_fixed() {
        let f = Field::Rational;
        let v = OrthSpace::diagonal(f, &[1, 2]).unwrap();
        let a = vec![pv(f, 2, &[&[1], &[0, 1]])];
        assert_eq!(witt_lift(&v, &a, &a, &[1]).unwrap(), a);
    }

    #[test]
    fn hyperbolic_example() {
        let f = Field::Rational;
        let v = OrthSpace::hyperbolic(f);
        let a = vec![pv(f, 2, &[&[1], &[1]])];
        let b = vec![pv(f, 2, &[&[1], &[1, 1]])];
        let bt = witt_lift(&v, &a, &b, &[1]).unwrap();
        assert_eq!(v.pair_poly(&bt[0], &bt[0]), TruncPoly::from_i64(f, &[2], 2));
        assert_eq!(poly_coeffs(&bt[0], 0), poly_coeffs(&b[0], 0));
    }

    #[test]
    fn hypothesis_violation() {
        let f = Field::Rational;
        let v = OrthSpace::hyperbolic(f);
        let a = vec![pv(f, 2, &[&[1], &[1]])];
        let b = vec![pv(f, 2, &[&[1], &[2]])];
        assert!(matches!(witt_lift(&v, &a, &b, &[1]), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn two_vectors_mixed_types() {
        let f = Field::prime(5).unwrap();
        let v = OrthSpace::diagonal(f, &[1, 1, 2]).unwrap();
        let a = vec![pv(f, 3, &[&[1], &[0], &[0]]), pv(f, 3, &[&[0], &[1], &[0, 0, 1]])];
        let b = vec![pv(f, 3, &[&[1], &[0, 0, 0], &[0, 0, 1]]), pv(f, 3, &[&[0, 0, 1], &[1, 2], &[0]])];
        let types = [3, 1];
        assert!(grams_agree(&v, &a, &b, &types));
        let bt = witt_lift(&v, &a, &b, &types).unwrap();
        assert_eq!(v.gram_poly(&bt), v.gram_poly(&a));
        for (i, &ki) in types.iter().enumerate() {
            for c in 0..3 {
                assert!(bt[i][c].sub(&b[i][c]).valuation() >= ki);
            }
        }
        assert!(is_primitive_tuple(&bt));
    }
}
