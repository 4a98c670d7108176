//! Gaussian elimination over an exact field and canonical subspaces.

use std::fmt;

use serde::Serialize;

use super::matrix::{Matrix, Vector};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// Reduces `a` in place-copy to RREF. Zero rows are dropped.
pub fn rref(a: &Matrix) -> Echelon {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].inv().expect("nonzero pivot");
        for j in c..cols {
            let x = &m[(r, j)] * &inv;
            m[(r, j)] = x;
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                if m[(r, j)].is_zero() {
                    continue;
                }
                let d = &f * &m[(r, j)];
                m[(i, j)] -= &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let kept: Vec<usize> = (0..r).collect();
    let all: Vec<usize> = (0..cols).collect();
    Echelon { matrix: m.select(&kept, &all), pivots }
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).pivots.len()
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("inverse of {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut aug = Matrix::zeros(a.field(), n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, &Matrix::identity(a.field(), n));
    let e = rref(&aug);
    if e.pivots.len() < n || e.pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(e.matrix.submatrix(0..n, n..2 * n))
}

pub fn determinant(a: &Matrix) -> Scalar {
    assert!(a.is_square());
    let n = a.rows();
    let mut m = a.clone();
    let mut det = a.field().one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
            return a.field().zero();
        };
        if p != c {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= &m[(c, c)];
        let inv = m[(c, c)].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[(i, c)].is_zero() {
                continue;
            }
            let f = &m[(i, c)] * &inv;
            for j in c..n {
                let d = &f * &m[(c, j)];
                m[(i, j)] -= &d;
            }
        }
    }
    det
}

/// Basis of the right kernel `{x : A x^T = 0}`, i.e. column-vector kernel, as row vectors.
pub fn kernel(a: &Matrix) -> Vec<Vector> {
    let e = rref(a);
    let cols = a.cols();
    let field = a.field();
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = -&e.matrix[(r, f)];
            }
            v
        })
        .collect()
}

/// Basis of the left kernel `{x : x A = 0}`.
pub fn left_kernel(a: &Matrix) -> Vec<Vector> {
    kernel(&a.transpose())
}

/// Solution set of `A x^T = b^T`.
#[derive(Clone, Debug, PartialEq)]
pub enum AffineSolution {
    Inconsistent { rank: usize },
    Solutions { particular: Vector, kernel: Vec<Vector>, rank: usize },
}

impl AffineSolution {
    pub fn rank(&self) -> usize {
        match self {
            AffineSolution::Inconsistent { rank } | AffineSolution::Solutions { rank, .. } => *rank,
        }
    }

    pub fn particular(&self) -> Option<&Vector> {
        match self {
            AffineSolution::Inconsistent { .. } => None,
            AffineSolution::Solutions { particular, .. } => Some(particular),
        }
    }

    pub fn kernel(&self) -> &[Vector] {
        match self {
            AffineSolution::Inconsistent { .. } => &[],
            AffineSolution::Solutions { kernel, .. } => kernel,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, AffineSolution::Solutions { .. })
    }
}

/// Solves `A x = b` with `x`, `b` column vectors (given as slices).
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<AffineSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("{} right-hand sides for {} equations", b.len(), a.rows())));
    }
    let (rows, cols) = (a.rows(), a.cols());
    let mut aug = Matrix::zeros(a.field(), rows, cols + 1);
    aug.set_block(0, 0, a);
    for (i, x) in b.iter().enumerate() {
        aug[(i, cols)] = x.clone();
    }
    let e = rref(&aug);
    let rank = e.pivots.iter().filter(|&&p| p < cols).count();
    if e.pivots.last() == Some(&cols) {
        return Ok(AffineSolution::Inconsistent { rank });
    }
    let mut particular = vec![a.field().zero(); cols];
    for (r, &p) in e.pivots.iter().enumerate() {
        particular[p] = e.matrix[(r, cols)].clone();
    }
    Ok(AffineSolution::Solutions { particular, kernel: kernel(a), rank })
}

/// Solves `x A = b` for a row vector `x`.
pub fn solve_left(a: &Matrix, b: &[Scalar]) -> Result<AffineSolution> {
    solve_linear(&a.transpose(), b)
}

/// A linear subspace of `F^n`, stored by its reduced echelon basis.
///
/// Two subspaces compare equal exactly when they are equal as sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, ambient, vectors).expect("vectors of ambient length");
        Subspace::row_space(&m)
    }

    pub fn row_space(m: &Matrix) -> Subspace {
        let e = rref(m);
        Subspace { ambient: m.cols(), basis: e.matrix, pivots: e.pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical (reduced echelon) basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (j, o) in out.iter_mut().enumerate().skip(p) {
                let b = &self.basis[(r, j)];
                if !b.is_zero() {
                    *o -= &(&f * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::row_space(&self.basis.vstack(&other.basis))
    }

    pub fn extend(&self, vectors: &[Vector]) -> Subspace {
        let mut all = self.basis_vectors();
        all.extend(vectors.iter().cloned());
        Subspace::span(self.field(), self.ambient, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = a B1 = b B2  <=>  (a, -b) in left kernel of [B1; B2]
        let field = self.field();
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(field, self.ambient);
        }
        let stacked = self.basis.vstack(&other.basis);
        let vecs: Vec<Vector> = left_kernel(&stacked)
            .into_iter()
            .map(|k| {
                let a = &k[..self.dim()];
                Matrix::from_rows(field, self.dim(), &[a.to_vec()]).unwrap().mul(&self.basis).row_vec(0)
            })
            .collect();
        Subspace::span(field, self.ambient, &vecs)
    }

    /// Image under right multiplication by `m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        if self.dim() == 0 {
            return Subspace::zero(self.field(), m.cols());
        }
        Subspace::row_space(&self.basis.mul(m))
    }

    pub fn is_stable(&self, m: &Matrix) -> bool {
        (0..self.dim()).all(|i| self.contains(&m.apply(self.basis.row(i))))
    }

    /// Orthogonal complement `{v : v G u^T = 0 for all u in self}`.
    pub fn perp(&self, gram: &Matrix) -> Subspace {
        let field = self.field();
        if self.dim() == 0 {
            return Subspace::full(field, self.ambient);
        }
        // v G B^T = 0  <=>  (B G^T) v^T = 0
        let k = kernel(&self.basis.mul(&gram.transpose()));
        Subspace::span(field, self.ambient, &k)
    }

    pub fn is_isotropic(&self, gram: &Matrix) -> bool {
        self.basis.mul(gram).mul(&self.basis.transpose()).is_zero()
    }

    /// Vectors whose images complete a basis of `self` modulo `sub`, chosen from the echelon rows.
    pub fn complement_rows(&self, sub: &Subspace) -> Vec<Vector> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.basis_vectors() {
            if !acc.contains(&v) {
                acc = acc.extend(std::slice::from_ref(&v));
                out.push(v);
            }
        }
        out
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis.to_string_rows())
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Orders by dimension, then lexicographically by the string form of the echelon basis.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dim(), self.pivots.clone(), self.basis.to_string_rows()).cmp(&(
            other.dim(),
            other.pivots.clone(),
            other.basis.to_string_rows(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn identity_solves_uniquely() {
        let a = Matrix::identity(q(), 3);
        let b = vec![q().from_i64(2), q().from_i64(-1), q().from_i64(5)];
        let s = solve_linear(&a, &b).unwrap();
        assert_eq!(s.particular(), Some(&b));
        assert!(s.kernel().is_empty());
        assert_eq!(s.rank(), 3);
    }

    #[test]
    fn zero_matrix_inconsistent() {
        let a = Matrix::zeros(q(), 2, 2);
        let b = vec![q().one(), q().zero()];
        assert!(!solve_linear(&a, &b).unwrap().is_consistent());
    }

    #[test]
    fn random_system_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = Matrix::from_fn(q(), 4, 6, |_, _| q().from_i64(rng.gen_range(-3..=3)));
            let x: Vector = (0..6).map(|_| q().from_i64(rng.gen_range(-3..=3))).collect();
            let b = a.transpose().apply(&x);
            let s = solve_linear(&a, &b).unwrap();
            let p = s.particular().unwrap();
            assert_eq!(a.transpose().apply(p), b);
            for k in s.kernel() {
                assert!(a.transpose().apply(k).iter().all(Scalar::is_zero));
            }
            assert_eq!(s.kernel().len() + s.rank(), 6);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(7).unwrap();
        let a = Matrix::from_i64(f, &[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(determinant(&a), f.from_i64(1 + 24));
    }

    #[test]
    fn singular_detected() {
        let a = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&a), Err(Error::Singular));
    }

    #[test]
    fn subspace_operations() {
        let f = q();
        let e = |i| super::super::matrix::unit_vector(f, 3, i);
        let a = Subspace::span(f, 3, &[e(0), e(1)]);
        let b = Subspace::span(f, 3, &[e(1), e(2)]);
        assert_eq!(a.intersection(&b), Subspace::span(f, 3, &[e(1)]));
        assert_eq!(a.sum(&b).dim(), 3);
        let mixed = Subspace::span(f, 3, &[super::super::matrix::vec_add(&e(0), &e(1)), e(1)]);
        assert_eq!(mixed, a);
    }
}
