//! Matrices over `R_K = F[t]/(t^K)`, their Smith form, and linear solves over `R_K`.

use std::fmt;

use serde::Serialize;

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::truncpoly::TruncPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TPolyMatrix {
    field: Field,
    k: usize,
    rows: usize,
    cols: usize,
    data: Vec<TruncPoly>,
}

impl TPolyMatrix {
    pub fn zeros(field: Field, k: usize, rows: usize, cols: usize) -> TPolyMatrix {
        TPolyMatrix { field, k, rows, cols, data: vec![TruncPoly::zero(field, k); rows * cols] }
    }

    pub fn identity(field: Field, k: usize, n: usize) -> TPolyMatrix {
        let mut m = TPolyMatrix::zeros(field, k, n, n);
        for i in 0..n {
            m.set(i, i, TruncPoly::one(field, k));
        }
        m
    }

    pub fn from_fn(
        field: Field,
        k: usize,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> TruncPoly,
    ) -> TPolyMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.order(), k, "entry has wrong truncation order");
                data.push(x);
            }
        }
        TPolyMatrix { field, k, rows, cols, data }
    }

    /// `Σ_s t^s A_s` for constant matrices `A_s` (extra terms beyond `K` are dropped).
    pub fn from_coefficients(field: Field, k: usize, coeffs: &[Matrix]) -> TPolyMatrix {
        let (rows, cols) = coeffs.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        TPolyMatrix::from_fn(field, k, rows, cols, |i, j| {
            let c: Vec<Scalar> = coeffs.iter().map(|m| m[(i, j)].clone()).collect();
            TruncPoly::from_coeffs(field, &c, k)
        })
    }

    pub fn from_constant(m: &Matrix, k: usize) -> TPolyMatrix {
        TPolyMatrix::from_coefficients(m.field(), k, std::slice::from_ref(m))
    }

    /// The constant matrix of `t^s`-coefficients.
    pub fn coefficient(&self, s: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).coeff(s).clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn precision(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: TruncPoly) {
        assert_eq!(x.order(), self.k);
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<TruncPoly> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(TruncPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        *x == TruncPoly::one(self.field, self.k)
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> TPolyMatrix {
        TPolyMatrix::from_fn(self.field, self.k, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &TPolyMatrix) -> TPolyMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        assert_eq!(self.k, rhs.k, "truncation order mismatch");
        let mut out = TPolyMatrix::zeros(self.field, self.k, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &TPolyMatrix) -> TPolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        TPolyMatrix::from_fn(self.field, self.k, self.rows, self.cols, |i, j| self.get(i, j).add(rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &TPolyMatrix) -> TPolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        TPolyMatrix::from_fn(self.field, self.k, self.rows, self.cols, |i, j| self.get(i, j).sub(rhs.get(i, j)))
    }

    pub fn scale(&self, c: &TruncPoly) -> TPolyMatrix {
        TPolyMatrix::from_fn(self.field, self.k, self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    /// Reinterprets every entry at truncation order `k`.
    pub fn truncate(&self, k: usize) -> TPolyMatrix {
        TPolyMatrix::from_fn(self.field, k, self.rows, self.cols, |i, j| self.get(i, j).truncate(k))
    }

    /// The F-linear map on row vectors of `R_K^rows`, coordinates `(i, s) -> i*K + s` for `t^s` in slot `i`.
    pub fn expand(&self) -> Matrix {
        let k = self.k;
        let mut m = Matrix::zeros(self.field, self.rows * k, self.cols * k);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for r in 0..k {
                    let c = a.coeff(r);
                    if c.is_zero() {
                        continue;
                    }
                    for s in 0..k - r {
                        m[(i * k + s, j * k + s + r)] = c.clone();
                    }
                }
            }
        }
        m
    }

    pub fn inverse(&self) -> Result<TPolyMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        solve_rk(self, &TPolyMatrix::identity(self.field, self.k, self.rows))?.ok_or(Error::Singular)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_dst -= f * row_src`.
    fn row_axpy(&mut self, dst: usize, src: usize, f: &TruncPoly) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.get(dst, j).sub(&f.mul(s));
            self.set(dst, j, v);
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, f: &TruncPoly) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let v = self.get(i, dst).sub(&s.mul(f));
            self.set(i, dst, v);
        }
    }

    fn scale_row(&mut self, i: usize, f: &TruncPoly) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(f);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for TPolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for TPolyMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<TruncPoly>> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(s)
    }
}

/// `U·A·V = D`, with `D` diagonal with entries `t^{d_i}`; `d_i = K` stands for zero.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: TPolyMatrix,
    pub d: TPolyMatrix,
    pub v: TPolyMatrix,
    pub exponents: Vec<usize>,
}

/// Smith normal form over the truncated discrete valuation ring `F[t]/(t^K)`.
///
/// Pivots are chosen by minimal valuation, ties by lowest `(row, col)`, so the output is deterministic.
pub fn smith_form_t(a: &TPolyMatrix) -> SmithForm {
    let (field, k, rows, cols) = (a.field, a.k, a.rows, a.cols);
    let mut d = a.clone();
    let mut u = TPolyMatrix::identity(field, k, rows);
    let mut v = TPolyMatrix::identity(field, k, cols);
    let steps = rows.min(cols);
    let mut exponents = Vec::with_capacity(steps);
    for s in 0..steps {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in s..rows {
            for j in s..cols {
                let val = d.get(i, j).valuation();
                if val < k && best.is_none_or(|(bv, _, _)| val < bv) {
                    best = Some((val, i, j));
                }
            }
        }
        let Some((val, pi, pj)) = best else {
            exponents.extend(std::iter::repeat_n(k, steps - s));
            break;
        };
        d.swap_rows(s, pi);
        u.swap_rows(s, pi);
        d.swap_cols(s, pj);
        v.swap_cols(s, pj);
        let unit = d.get(s, s).unshift(val).expect("valuation");
        let uinv = unit.inv().expect("unit part");
        d.scale_row(s, &uinv);
        u.scale_row(s, &uinv);
        for i in 0..rows {
            if i == s || d.get(i, s).is_zero() {
                continue;
            }
            let f = d.get(i, s).unshift(val).expect("pivot has minimal valuation");
            d.row_axpy(i, s, &f);
            u.row_axpy(i, s, &f);
        }
        for j in 0..cols {
            if j == s || d.get(s, j).is_zero() {
                continue;
            }
            let f = d.get(s, j).unshift(val).expect("pivot has minimal valuation");
            d.col_axpy(j, s, &f);
            v.col_axpy(j, s, &f);
        }
        exponents.push(val);
    }
    SmithForm { u, d, v, exponents }
}

/// Solves `A X = B` over `R_K`. Returns `None` when no solution exists.
pub fn solve_rk(a: &TPolyMatrix, b: &TPolyMatrix) -> Result<Option<TPolyMatrix>> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!("{} equations vs {} right-hand rows", a.rows, b.rows)));
    }
    if a.k != b.k {
        return Err(Error::PrecisionMismatch(a.k, b.k));
    }
    let k = a.k;
    let sf = smith_form_t(a);
    // D (V^{-1} X) = U B
    let ub = sf.u.mul(b);
    let mut y = TPolyMatrix::zeros(a.field, k, a.cols, b.cols);
    for i in 0..a.rows {
        let e = sf.exponents.get(i).copied().unwrap_or(k);
        for j in 0..b.cols {
            let rhs = ub.get(i, j);
            if rhs.valuation() < e {
                return Ok(None);
            }
            if i < a.cols && e < k {
                y.set(i, j, rhs.unshift(e).expect("checked valuation"));
            }
        }
    }
    Ok(Some(sf.v.mul(&y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tp(field: Field, c: &[i64], k: usize) -> TruncPoly {
        TruncPoly::from_i64(field, c, k)
    }

    #[test]
    fn reorders_diagonal() {
        let q = Field::Rational;
        let a = TPolyMatrix::from_fn(q, 3, 2, 2, |i, j| match (i, j) {
            (0, 0) => tp(q, &[0, 1], 3),
            (1, 1) => tp(q, &[1], 3),
            _ => tp(q, &[], 3),
        });
        let sf = smith_form_t(&a);
        assert_eq!(sf.exponents, vec![0, 1]);
        assert_eq!(sf.u.mul(&a).mul(&sf.v), sf.d);
    }

    #[test]
    fn antidiagonal() {
        let q = Field::Rational;
        let a = TPolyMatrix::from_fn(q, 3, 2, 2, |i, j| match (i, j) {
            (0, 1) => tp(q, &[0, 1], 3),
            (1, 0) => tp(q, &[0, 0, 1], 3),
            _ => tp(q, &[], 3),
        });
        assert_eq!(smith_form_t(&a).exponents, vec![1, 2]);
    }

    #[test]
    fn random_multiply_back() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let a = TPolyMatrix::from_fn(f, 3, 3, 3, |_, _| {
                let c: Vec<i64> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                tp(f, &c, 3)
            });
            let sf = smith_form_t(&a);
            assert_eq!(sf.u.mul(&a).mul(&sf.v), sf.d);
            assert!(sf.exponents.windows(2).all(|w| w[0] <= w[1]));
            for i in 0..3 {
                assert_eq!(*sf.d.get(i, i), TruncPoly::t_pow(f, sf.exponents[i], 3));
            }
        }
    }

    #[test]
    fn solve_and_inverse() {
        let q = Field::Rational;
        let a = TPolyMatrix::from_fn(q, 3, 2, 2, |i, j| match (i, j) {
            (0, 0) => tp(q, &[1, 1], 3),
            (0, 1) => tp(q, &[0, 2], 3),
            (1, 0) => tp(q, &[3], 3),
            _ => tp(q, &[1, 0, 5], 3),
        });
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let t = TPolyMatrix::from_fn(q, 3, 1, 1, |_, _| tp(q, &[0, 1], 3));
        let rhs = TPolyMatrix::from_fn(q, 3, 1, 1, |_, _| tp(q, &[1], 3));
        assert_eq!(solve_rk(&t, &rhs).unwrap(), None);
    }

    #[test]
    fn expand_matches_multiplication() {
        let q = Field::Rational;
        let a = TPolyMatrix::from_fn(q, 3, 1, 1, |_, _| tp(q, &[2, 1], 3));
        let e = a.expand();
        // (1 + t) * (2 + t) = 2 + 3t + t^2
        let x = vec![q.from_i64(1), q.from_i64(1), q.from_i64(0)];
        assert_eq!(e.apply(&x), vec![q.from_i64(2), q.from_i64(3), q.from_i64(1)]);
    }
}
