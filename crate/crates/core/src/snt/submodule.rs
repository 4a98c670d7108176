//! t-stable subspaces, their quasi-bases and type partitions.

use serde::Serialize;

use super::module::SntModule;
use crate::error::{Error, Result};
use crate::ring::linalg::{kernel, Subspace};
use crate::ring::matrix::{Matrix, Vector};
use crate::ring::smith::{smith_form_t, TPolyMatrix};
use crate::ring::truncpoly::TruncPoly;

/// A t-stable subspace `W` with a quasi-basis `e_1, ..., e_m` of orders `k_1 >= ... >= k_m`.
///
/// The quasi-basis is a set of Jordan chain heads: `{t^s e_i : s < k_i}` is an `F`-basis of `W`.
/// It is computed from canonical echelon data, so equal subspaces get equal quasi-bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SntSubmodule {
    #[serde(skip)]
    t_action: Matrix,
    space: Subspace,
    quasi_basis: Vec<Vector>,
    types: Vec<usize>,
}

impl SntSubmodule {
    /// `t_action` is the ambient nilpotent operator; `space` must be stable under it.
    pub fn new(t_action: &Matrix, space: Subspace) -> Result<SntSubmodule> {
        if !space.is_stable(t_action) {
            return Err(Error::NotTStable);
        }
        let (quasi_basis, types) = jordan_heads(t_action, &space);
        Ok(SntSubmodule { t_action: t_action.clone(), space, quasi_basis, types })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn quasi_basis(&self) -> &[Vector] {
        &self.quasi_basis
    }

    /// Type partition `k_1 >= ... >= k_m`.
    pub fn types(&self) -> &[usize] {
        &self.types
    }

    /// Number of quasi-basis vectors, `dim W/tW`.
    pub fn rank(&self) -> usize {
        self.types.len()
    }

    /// `t^s e_i` for every `i` and `s < k_i`, grouped by `i`.
    pub fn adapted_basis(&self) -> Vec<Vector> {
        let mut out = Vec::with_capacity(self.dim());
        for (e, &k) in self.quasi_basis.iter().zip(&self.types) {
            let mut cur = e.clone();
            for _ in 0..k {
                out.push(cur.clone());
                cur = self.t_action.apply(&cur);
            }
        }
        out
    }

    /// Matrix of `t` on `W` in the echelon basis of `W`.
    pub fn restricted_t(&self) -> Matrix {
        restricted_operator(&self.t_action, &self.space)
    }

    /// Type partition read off the elementary divisors of `t·I - T_W` over `F[t]/(t^K)`, `K = dim W + 1`.
    pub fn smith_types(&self) -> Vec<usize> {
        smith_types(&self.restricted_t())
    }
}

/// Quasi-basis of the span of `generators`, which must be t-stable.
pub fn quasi_basis(m: &SntModule, generators: &[Vector]) -> Result<SntSubmodule> {
    SntSubmodule::new(m.t_action(), m.span(generators))
}

pub fn restricted_operator(t: &Matrix, w: &Subspace) -> Matrix {
    let rows: Vec<Vector> =
        w.basis_vectors().iter().map(|b| w.coordinates(&t.apply(b)).expect("stable subspace")).collect();
    Matrix::from_rows(t.field(), w.dim(), &rows).expect("square")
}

/// Elementary-divisor exponents of `t·I - A` that are positive, sorted descending.
pub fn smith_types(a: &Matrix) -> Vec<usize> {
    let n = a.rows();
    if n == 0 {
        return vec![];
    }
    let f = a.field();
    let k = n + 1;
    let pres = TPolyMatrix::from_fn(f, k, n, n, |i, j| {
        let mut p = TruncPoly::constant(-&a[(i, j)], k);
        if i == j {
            p.set_coeff(1, f.one());
        }
        p
    });
    let mut ex: Vec<usize> = smith_form_t(&pres).exponents.into_iter().filter(|&e| e > 0).collect();
    ex.sort_unstable_by(|a, b| b.cmp(a));
    ex
}

fn jordan_heads(t: &Matrix, w: &Subspace) -> (Vec<Vector>, Vec<usize>) {
    let f = w.field();
    let n = w.ambient_dim();
    if w.dim() == 0 {
        return (vec![], vec![]);
    }
    // K_j = W ∩ ker T^j for j = 0..=N
    let mut levels = vec![Subspace::zero(f, n)];
    let mut power = Matrix::identity(f, n);
    loop {
        power = power.mul(t);
        let ker = Subspace::span(f, n, &kernel(&power.transpose()));
        let kj = w.intersection(&ker);
        let done = kj.dim() == w.dim() || levels.len() > n;
        levels.push(kj);
        if done {
            break;
        }
    }
    let top = levels.len() - 1;
    let mut heads = Vec::new();
    let mut types = Vec::new();
    for j in (1..=top).rev() {
        let mut modulo = levels[j - 1].clone();
        if j < top {
            modulo = modulo.sum(&levels[j + 1].image(t));
        }
        for v in levels[j].complement_rows(&modulo) {
            heads.push(v);
            types.push(j);
        }
    }
    (heads, types)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::matrix::unit_vector;
    use crate::ring::Field;

    #[test]
    fn chain_generator_in_h2() {
        let f = Field::Rational;
        let m = SntModule::standard_plane(f, 2).unwrap();
        let w = quasi_basis(&m, &[unit_vector(f, 4, 0), unit_vector(f, 4, 1)]).unwrap();
        assert_eq!(w.types(), &[2]);
        assert_eq!(w.quasi_basis(), &[unit_vector(f, 4, 0)]);
        let w1 = quasi_basis(&m, &[unit_vector(f, 4, 1)]).unwrap();
        assert_eq!(w1.types(), &[1]);
    }

    #[test]
    fn not_stable_rejected() {
        let f = Field::Rational;
        let m = SntModule::standard_plane(f, 2).unwrap();
        assert_eq!(quasi_basis(&m, &[unit_vector(f, 4, 0)]), Err(Error::NotTStable));
    }

    #[test]
    fn smith_agrees_on_sum() {
        let f = Field::prime(3).unwrap();
        let m = SntModule::standard(f, &[3, 2]).unwrap();
        let w = quasi_basis(&m, &m.t_closure(&[unit_vector(f, 10, 0), unit_vector(f, 10, 4), unit_vector(f, 10, 7)]).basis_vectors())
            .unwrap();
        assert_eq!(w.types(), w.smith_types().as_slice());
        assert_eq!(w.adapted_basis().len(), w.dim());
    }
}
