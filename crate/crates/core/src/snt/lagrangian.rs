//! t-Lagrangian subspaces, the standard family `L_i`, and Lagrangian flags `M = M_- ⊕ M_+`.

use super::decompose::Decomposition;
use super::module::SntModule;
use crate::error::{Error, Result};
use crate::ring::linalg::{inverse, Subspace};
use crate::ring::matrix::{Matrix, Vector};
use crate::ring::Scalar;

/// True iff the span is t-stable, isotropic and of half the ambient dimension.
pub fn is_t_lagrangian(m: &SntModule, vectors: &[Vector]) -> bool {
    is_t_lagrangian_space(m, &m.span(vectors))
}

pub fn is_t_lagrangian_space(m: &SntModule, s: &Subspace) -> bool {
    2 * s.dim() == m.dim() && s.is_isotropic(m.gram()) && s.is_stable(m.t_action())
}

/// `L_{i_1} ⊕ ... ⊕ L_{i_n}` transported to `M`, where in `H_k`
/// `L_i = span{t^i e1, ..., t^{k-1} e1, t^{k-i} e2, ..., t^{k-1} e2}`.
pub fn standard_t_lagrangian(dec: &Decomposition, indices: &[usize]) -> Result<Subspace> {
    if indices.len() != dec.partition.len() {
        return Err(Error::IndexOutOfRange(format!("{} indices for {} blocks", indices.len(), dec.partition.len())));
    }
    let q = &dec.from_standard;
    let mut rows = Vec::new();
    for (b, (&i, &k)) in indices.iter().zip(&dec.partition).enumerate() {
        if i >= k {
            return Err(Error::IndexOutOfRange(format!("index {i} in block H_{k}")));
        }
        for s in i..k {
            rows.push(q.row_vec(dec.std_index(b, 0, s)));
        }
        for s in k - i..k {
            rows.push(q.row_vec(dec.std_index(b, 1, s)));
        }
    }
    Ok(Subspace::span(q.field(), q.cols(), &rows))
}

/// All index tuples `(i_1, ..., i_n)` with `0 <= i_j < k_j`.
pub fn standard_indices(partition: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &k in partition {
        out = out.into_iter().flat_map(|p| (0..k).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

/// A splitting `M = M_- ⊕ M_+` into Lagrangians with `M_+` t-stable.
///
/// Each side carries an explicit ordered basis; coordinates on `M_-` refer to it.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianFlag {
    minus_basis: Matrix,
    plus_basis: Matrix,
    split: Matrix,
    minus_t: Matrix,
    minus_stable: bool,
}

impl LagrangianFlag {
    pub fn new(m: &SntModule, minus_basis: Matrix, plus_basis: Matrix) -> Result<LagrangianFlag> {
        let half = m.dim() / 2;
        if minus_basis.rows() != half || plus_basis.rows() != half {
            return Err(Error::InvalidFlag(format!("sides must have dimension {half}")));
        }
        let minus = minus_basis.row_vectors();
        let plus = plus_basis.row_vectors();
        if !m.is_isotropic(&minus) || !m.is_isotropic(&plus) {
            return Err(Error::InvalidFlag("sides must be isotropic".into()));
        }
        let split = inverse(&minus_basis.vstack(&plus_basis)).map_err(|_| Error::InvalidFlag("sides must span M".into()))?;
        let plus_space = m.span(&plus);
        if !plus_space.is_stable(m.t_action()) {
            return Err(Error::InvalidFlag("M_+ must be t-stable".into()));
        }
        let minus_stable = m.span(&minus).is_stable(m.t_action());
        let minus_t = Matrix::from_rows(
            m.field(),
            half,
            &minus.iter().map(|v| split.apply(&m.apply_t(v))[..half].to_vec()).collect::<Vec<_>>(),
        )?;
        Ok(LagrangianFlag { minus_basis, plus_basis, split, minus_t, minus_stable })
    }

    /// `M_-` spanned by the `e1`-type standard vectors, `M_+` by the `e2`-type ones, block by block.
    pub fn standard(m: &SntModule, dec: &Decomposition) -> Result<LagrangianFlag> {
        let q = &dec.from_standard;
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for (b, &k) in dec.partition.iter().enumerate() {
            for s in 0..k {
                minus.push(q.row_vec(dec.std_index(b, 0, s)));
                plus.push(q.row_vec(dec.std_index(b, 1, s)));
            }
        }
        let f = m.field();
        let n = m.dim();
        LagrangianFlag::new(m, Matrix::from_rows(f, n, &minus)?, Matrix::from_rows(f, n, &plus)?)
    }

    pub fn half_dim(&self) -> usize {
        self.minus_basis.rows()
    }

    pub fn minus_basis(&self) -> &Matrix {
        &self.minus_basis
    }

    pub fn plus_basis(&self) -> &Matrix {
        &self.plus_basis
    }

    pub fn minus_space(&self) -> Subspace {
        Subspace::row_space(&self.minus_basis)
    }

    pub fn plus_space(&self) -> Subspace {
        Subspace::row_space(&self.plus_basis)
    }

    /// Whether `M_-` is itself t-stable; otherwise t acts on it through `M/M_+`.
    pub fn minus_is_t_stable(&self) -> bool {
        self.minus_stable
    }

    /// The t-action on `M_-` coordinates: the `M_-` component of `m t`.
    pub fn minus_t_action(&self) -> &Matrix {
        &self.minus_t
    }

    /// `(M_- coordinates, M_+ coordinates)` of a vector of `M`.
    pub fn split(&self, v: &[Scalar]) -> (Vector, Vector) {
        let c = self.split.apply(v);
        let h = self.half_dim();
        (c[..h].to_vec(), c[h..].to_vec())
    }

    /// Vector of `M` from `M_-` coordinates.
    pub fn from_minus(&self, c: &[Scalar]) -> Vector {
        self.minus_basis.apply(c)
    }

    pub fn from_plus(&self, c: &[Scalar]) -> Vector {
        self.plus_basis.apply(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::matrix::unit_vector;
    use crate::ring::Field;
    use crate::snt::decompose::decompose;

    #[test]
    fn plus_side_is_t_lagrangian() {
        for k in 1..=4 {
            let f = Field::Rational;
            let m = SntModule::standard_plane(f, k).unwrap();
            let plus: Vec<Vector> = (k..2 * k).map(|i| unit_vector(f, 2 * k, i)).collect();
            assert!(is_t_lagrangian(&m, &plus));
        }
    }

    #[test]
    fn line_in_h2_too_small() {
        let f = Field::Rational;
        let m = SntModule::standard_plane(f, 2).unwrap();
        assert!(!is_t_lagrangian(&m, &[unit_vector(f, 4, 0)]));
    }

    #[test]
    fn standard_family_in_h2() {
        let f = Field::Rational;
        let m = SntModule::standard_plane(f, 2).unwrap();
        let d = decompose(&m).unwrap();
        let l0 = standard_t_lagrangian(&d, &[0]).unwrap();
        assert_eq!(l0, m.span(&[unit_vector(f, 4, 0), unit_vector(f, 4, 1)]));
        let l1 = standard_t_lagrangian(&d, &[1]).unwrap();
        assert_eq!(l1, m.span(&[unit_vector(f, 4, 1), unit_vector(f, 4, 3)]));
        assert!(standard_t_lagrangian(&d, &[2]).is_err());
    }

    #[test]
    fn every_standard_lagrangian_validates() {
        let f = Field::prime(3).unwrap();
        let m = SntModule::standard(f, &[3, 2, 1]).unwrap();
        let d = decompose(&m).unwrap();
        for idx in standard_indices(&d.partition) {
            let l = standard_t_lagrangian(&d, &idx).unwrap();
            assert!(is_t_lagrangian_space(&m, &l), "{idx:?}");
        }
    }

    #[test]
    fn standard_flag_minus_action_is_shift() {
        let f = Field::Rational;
        let m = SntModule::standard_plane(f, 3).unwrap();
        let flag = LagrangianFlag::standard(&m, &decompose(&m).unwrap()).unwrap();
        assert!(flag.minus_is_t_stable());
        assert_eq!(*flag.minus_t_action(), Matrix::from_i64(f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]));
    }
}
