//! Positive definite integral lattices and shell enumeration by norm.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::guard::{check_size, enum_limit};
use crate::ring::linalg::determinant;
use crate::ring::{Field, Matrix};

/// `|W(E_8)|`, the order of the automorphism group of the `E_8` lattice.
pub const E8_AUT_ORDER: u128 = 696_729_600;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralLattice {
    pub name: String,
    gram: Vec<Vec<i64>>,
    pub aut_order: Option<u128>,
}

impl IntegralLattice {
    pub fn new(name: impl Into<String>, gram: Vec<Vec<i64>>, aut_order: Option<u128>) -> Result<IntegralLattice> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("gram must be a nonempty square matrix".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput("gram is not symmetric".into()));
                }
            }
        }
        let l = IntegralLattice { name: name.into(), gram, aut_order };
        let m = l.rational_gram();
        for k in 1..=n {
            let minor = m.submatrix(0..k, 0..k);
            let d = determinant(&minor);
            if d.to_f64() <= 0.0 {
                return Err(Error::InvalidInput("gram is not positive definite".into()));
            }
        }
        Ok(l)
    }

    /// The root lattice `E_8` with its Cartan matrix as Gram matrix.
    pub fn e8() -> IntegralLattice {
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
        let mut g = vec![vec![0i64; 8]; 8];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges {
            g[a][b] = -1;
            g[b][a] = -1;
        }
        IntegralLattice { name: "E8".into(), gram: g, aut_order: Some(E8_AUT_ORDER) }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    fn rational_gram(&self) -> Matrix {
        let n = self.rank();
        Matrix::from_fn(Field::Rational, n, n, |i, j| Field::Rational.from_i64(self.gram[i][j]))
    }

    pub fn determinant(&self) -> i64 {
        determinant(&self.rational_gram()).to_f64().round() as i64
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant() == 1
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * self.gram[i][j] * x[j];
            }
        }
        s
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| x[i] * self.gram[i][j] * y[j]).sum::<i64>()).sum()
    }

    /// Fincke-Pohst data: `Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)^2`.
    fn quadratic_coefficients(&self) -> Vec<Vec<f64>> {
        let n = self.rank();
        let mut q: Vec<Vec<f64>> = self.gram.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        q
    }

    /// Calls `visit(x, norm)` for every lattice vector with `norm <= bound`, zero included.
    pub fn for_each_vector(&self, bound: i64, mut visit: impl FnMut(&[i64], i64)) {
        let n = self.rank();
        if bound < 0 {
            return;
        }
        let q = self.quadratic_coefficients();
        let mut x = vec![0i64; n];
        enumerate_level(self, &q, n - 1, bound as f64 + 1e-6, bound, &mut x, &mut visit);
    }

    /// Shell counts `c(0..=bound)`.
    pub fn enumerate_by_norm(&self, bound: i64) -> ShellCounts {
        let mut counts = vec![0u64; bound.max(0) as usize + 1];
        self.for_each_vector(bound, |_, nrm| counts[nrm as usize] += 1);
        ShellCounts { counts }
    }

    /// The vectors of norm at most `bound`, guarded by `SNT_MAX_ENUM`.
    pub fn vectors_by_norm(&self, bound: i64) -> Result<Vec<(Vec<i64>, i64)>> {
        let counts = self.enumerate_by_norm(bound);
        check_size("lattice vectors", counts.total() as u128, enum_limit(1_000_000))?;
        let mut out = Vec::with_capacity(counts.total() as usize);
        self.for_each_vector(bound, |x, nrm| out.push((x.to_vec(), nrm)));
        Ok(out)
    }

    /// Smallest nonzero norm.
    pub fn min_norm(&self) -> i64 {
        let mut b = self.gram.iter().enumerate().map(|(i, r)| r[i]).min().unwrap_or(1);
        let c = self.enumerate_by_norm(b);
        b = (1..=b).find(|&n| c.count(n) > 0).unwrap_or(b);
        b
    }

    /// Packing bound `#{u : (u, u) <= x} <= ((√x + ρ) / ρ)^N` with `ρ = √λ_1 / 2`.
    pub fn count_bound(&self, x: f64, min_norm: i64) -> f64 {
        let rho = (min_norm as f64).sqrt() / 2.0;
        ((x.sqrt() + rho) / rho).powi(self.rank() as i32)
    }
}

fn enumerate_level(
    l: &IntegralLattice,
    q: &[Vec<f64>],
    i: usize,
    budget: f64,
    bound: i64,
    x: &mut Vec<i64>,
    visit: &mut impl FnMut(&[i64], i64),
) {
    let n = q.len();
    let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let r = (budget.max(0.0) / q[i][i]).sqrt();
    let lo = (c - r - 1e-9).ceil() as i64;
    let hi = (c + r + 1e-9).floor() as i64;
    for xi in lo..=hi {
        x[i] = xi;
        let d = xi as f64 - c;
        let rest = budget - q[i][i] * d * d;
        if rest < -1e-6 {
            continue;
        }
        if i == 0 {
            let nrm = l.norm(x);
            if nrm <= bound {
                visit(x, nrm);
            }
        } else {
            enumerate_level(l, q, i - 1, rest, bound, x, visit);
        }
    }
    x[i] = 0;
}

/// Numbers `c(n)` of lattice vectors of norm `n`, for `n = 0..=B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellCounts {
    pub counts: Vec<u64>,
}

impl ShellCounts {
    pub fn bound(&self) -> i64 {
        self.counts.len() as i64 - 1
    }

    pub fn count(&self, n: i64) -> u64 {
        self.counts.get(n as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts of primitive vectors, from `c(n) = Σ_{d^2 | n} c_prim(n / d^2)`; index 0 is zero.
    pub fn primitive(&self) -> Vec<u64> {
        let b = self.counts.len();
        let mut prim = vec![0u64; b];
        for n in 1..b {
            let mut c = self.counts[n];
            let mut d = 2;
            while d * d <= n {
                if n % (d * d) == 0 {
                    c -= prim[n / (d * d)];
                }
                d += 1;
            }
            prim[n] = c;
        }
        prim
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_basics() {
        let e8 = IntegralLattice::e8();
        assert!(e8.is_even());
        assert_eq!(e8.determinant(), 1);
        assert_eq!(e8.min_norm(), 2);
        let c = e8.enumerate_by_norm(4);
        assert_eq!(c.counts, vec![1, 0, 240, 0, 2160]);
        assert_eq!(e8.enumerate_by_norm(0).counts, vec![1]);
    }

    #[test]
    fn primitive_shells() {
        let z2 = IntegralLattice::new("Z2", vec![vec![1, 0], vec![0, 1]], None).unwrap();
        let c = z2.enumerate_by_norm(8);
        // norms 1, 2, 4, 5, 8: 4, 4, 4, 8, 4 vectors
        assert_eq!(c.counts, vec![1, 4, 4, 0, 4, 8, 0, 0, 4]);
        assert_eq!(c.primitive(), vec![0, 4, 4, 0, 0, 8, 0, 0, 0]);
    }

    #[test]
    fn rejects_indefinite() {
        assert!(IntegralLattice::new("H", vec![vec![0, 1], vec![1, 0]], None).is_err());
        assert!(IntegralLattice::new("A", vec![vec![2, 1], vec![0, 2]], None).is_err());
    }

    #[test]
    fn count_bound_dominates() {
        let e8 = IntegralLattice::e8();
        let c = e8.enumerate_by_norm(6);
        assert!((c.total() as f64) <= e8.count_bound(6.0, 2));
    }
}
