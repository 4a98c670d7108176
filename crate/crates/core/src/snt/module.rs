//! Symplectic spaces with a nilpotent self-dual operator.

use serde::Serialize;

use super::Violation;
use crate::error::{Error, Result};
use crate::ring::linalg::{determinant, inverse, Subspace};
use crate::ring::matrix::{dot, Matrix, Vector};
use crate::ring::scalar::{Field, Scalar};

/// A symplectic `F`-space with a nilpotent operator `t`, acting on row vectors from the right.
///
/// The pairing is `<a, b> = a G b^T`. Self-duality `<a t, b> = <a, b t>` reads `T G = G T^T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SntModule {
    field: Field,
    t_action: Matrix,
    gram: Matrix,
}

impl SntModule {
    /// Builds and validates.
    pub fn new(t_action: Matrix, gram: Matrix) -> Result<SntModule> {
        let m = SntModule::new_unchecked(t_action, gram)?;
        let v = m.validate();
        if v.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidModule(v))
        }
    }

    /// Builds without checking the module axioms; shapes and fields are still checked.
    pub fn new_unchecked(t_action: Matrix, gram: Matrix) -> Result<SntModule> {
        if !t_action.is_square() || !gram.is_square() || t_action.rows() != gram.rows() {
            return Err(Error::DimensionMismatch(format!(
                "t_action {}x{}, gram {}x{}",
                t_action.rows(),
                t_action.cols(),
                gram.rows(),
                gram.cols()
            )));
        }
        if t_action.field() != gram.field() {
            return Err(Error::FieldMismatch(t_action.field().to_string(), gram.field().to_string()));
        }
        Ok(SntModule { field: gram.field(), t_action, gram })
    }

    /// The standard plane `H_k` on the basis `e1, t e1, ..., t^{k-1} e1, e2, ..., t^{k-1} e2`.
    pub fn standard_plane(field: Field, k: usize) -> Result<SntModule> {
        if k == 0 {
            return Err(Error::InvalidInput("H_k needs k >= 1".into()));
        }
        let mut t = Matrix::zeros(field, 2 * k, 2 * k);
        let mut g = Matrix::zeros(field, 2 * k, 2 * k);
        for half in [0, k] {
            for i in 0..k - 1 {
                t[(half + i, half + i + 1)] = field.one();
            }
        }
        for i in 0..k {
            let j = k - 1 - i;
            g[(i, k + j)] = field.one();
            g[(k + j, i)] = field.from_i64(-1);
        }
        Ok(SntModule { field, t_action: t, gram: g })
    }

    /// `H_{k_1} ⊕ ... ⊕ H_{k_n}` in the given order.
    pub fn standard(field: Field, partition: &[usize]) -> Result<SntModule> {
        let mut acc: Option<SntModule> = None;
        for &k in partition {
            let h = SntModule::standard_plane(field, k)?;
            acc = Some(match acc {
                None => h,
                Some(m) => m.direct_sum(&h)?,
            });
        }
        acc.ok_or_else(|| Error::InvalidInput("empty partition".into()))
    }

    pub fn direct_sum(&self, other: &SntModule) -> Result<SntModule> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(SntModule {
            field: self.field,
            t_action: Matrix::block_diag(self.field, &[&self.t_action, &other.t_action]),
            gram: Matrix::block_diag(self.field, &[&self.gram, &other.gram]),
        })
    }

    /// The same module written in the basis given by the rows of `p`.
    ///
    /// New coordinates `y` correspond to old coordinates `y p`.
    pub fn base_change(&self, p: &Matrix) -> Result<SntModule> {
        let pinv = inverse(p)?;
        Ok(SntModule {
            field: self.field,
            t_action: p.mul(&self.t_action).mul(&pinv),
            gram: p.mul(&self.gram).mul(&p.transpose()),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn t_action(&self) -> &Matrix {
        &self.t_action
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn pair(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        self.gram.bilinear(a, b)
    }

    pub fn apply_t(&self, v: &[Scalar]) -> Vector {
        self.t_action.apply(v)
    }

    /// Smallest `k` with `v t^k = 0`; zero for the zero vector.
    pub fn element_order(&self, v: &[Scalar]) -> usize {
        let mut cur = v.to_vec();
        let mut k = 0;
        while cur.iter().any(|x| !x.is_zero()) {
            cur = self.apply_t(&cur);
            k += 1;
            if k > self.dim() {
                break;
            }
        }
        k
    }

    /// Smallest `N` with `T^N = 0`; `dim + 1` when `T` is not nilpotent.
    pub fn nilpotency_index(&self) -> usize {
        let n = self.dim();
        let mut p = Matrix::identity(self.field, n);
        for k in 0..=n {
            if p.is_zero() {
                return k;
            }
            p = p.mul(&self.t_action);
        }
        n + 1
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.dim();
        if n == 0 || n % 2 == 1 {
            out.push(Violation::OddDimension(n));
        }
        if !self.gram.is_alternating() {
            out.push(Violation::NotAlternating);
        }
        if n > 0 && determinant(&self.gram).is_zero() {
            out.push(Violation::Degenerate);
        }
        if self.nilpotency_index() > n {
            out.push(Violation::NotNilpotent);
        }
        if self.t_action.mul(&self.gram) != self.gram.mul(&self.t_action.transpose()) {
            out.push(Violation::NotSelfDual);
        }
        out
    }

    pub fn is_isotropic(&self, vectors: &[Vector]) -> bool {
        vectors.iter().all(|a| vectors.iter().all(|b| self.pair(a, b).is_zero()))
    }

    pub fn span(&self, vectors: &[Vector]) -> Subspace {
        Subspace::span(self.field, self.dim(), vectors)
    }

    /// Smallest t-stable subspace containing the vectors.
    pub fn t_closure(&self, vectors: &[Vector]) -> Subspace {
        let mut all = Vec::new();
        for v in vectors {
            let mut cur = v.clone();
            while cur.iter().any(|x| !x.is_zero()) {
                all.push(cur.clone());
                cur = self.apply_t(&cur);
            }
        }
        self.span(&all)
    }

    /// Reads `{field, dim, t_action, gram}` with string scalars and validates.
    pub fn from_json(value: &serde_json::Value) -> Result<SntModule> {
        let field: Field = value
            .get("field")
            .and_then(|f| f.as_str())
            .ok_or_else(|| Error::Parse("missing \"field\"".into()))?
            .parse()?;
        let t = Matrix::from_json(field, value.get("t_action").ok_or_else(|| Error::Parse("missing \"t_action\"".into()))?)?;
        let g = Matrix::from_json(field, value.get("gram").ok_or_else(|| Error::Parse("missing \"gram\"".into()))?)?;
        if let Some(d) = value.get("dim").and_then(|d| d.as_u64()) {
            if d as usize != g.rows() {
                return Err(Error::DimensionMismatch(format!("declared dim {d}, gram has {} rows", g.rows())));
            }
        }
        SntModule::new(t, g)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ModuleRepr {
            field: self.field,
            dim: self.dim(),
            t_action: &self.t_action,
            gram: &self.gram,
        })
        .expect("serializable")
    }
}

#[derive(Serialize)]
struct ModuleRepr<'a> {
    field: Field,
    dim: usize,
    t_action: &'a Matrix,
    gram: &'a Matrix,
}

/// `<ξ, ξ t^k>` for every `k`; all of these vanish in an snt-module.
pub fn self_pairings(m: &SntModule, xi: &[Scalar]) -> Vec<Scalar> {
    let mut cur = xi.to_vec();
    let mut out = Vec::new();
    for _ in 0..=m.dim() {
        out.push(dot(&m.gram().apply(xi), &cur));
        cur = m.apply_t(&cur);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::matrix::unit_vector;

    #[test]
    fn h1_is_symplectic_plane() {
        let m = SntModule::standard_plane(Field::Rational, 1).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.t_action().is_zero());
        assert!(m.validate().is_empty());
    }

    #[test]
    fn h2_shape() {
        let m = SntModule::standard_plane(Field::Rational, 2).unwrap();
        let nz = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|&(i, j)| !m.gram()[(i, j)].is_zero()).count();
        assert_eq!(nz, 4);
        assert!(!m.t_action().is_zero());
        assert!(m.t_action().pow(2).is_zero());
    }

    #[test]
    fn standard_planes_validate() {
        for k in 1..=6 {
            assert!(SntModule::standard_plane(Field::prime(5).unwrap(), k).unwrap().validate().is_empty());
        }
        assert!(SntModule::standard_plane(Field::Rational, 0).is_err());
    }

    #[test]
    fn symmetric_gram_reported() {
        let h = SntModule::standard_plane(Field::Rational, 2).unwrap();
        let sym = Matrix::from_fn(Field::Rational, 4, 4, |i, j| {
            let x = &h.gram()[(i, j)];
            if i < j { x.clone() } else { h.gram()[(j, i)].clone() }
        });
        let bad = SntModule::new_unchecked(h.t_action().clone(), sym).unwrap();
        assert!(bad.validate().contains(&Violation::NotAlternating));
    }

    #[test]
    fn transposed_block_breaks_self_duality() {
        let h = SntModule::standard_plane(Field::Rational, 2).unwrap();
        let mut t = h.t_action().clone();
        t[(0, 1)] = Field::Rational.zero();
        t[(1, 0)] = Field::Rational.one();
        let bad = SntModule::new_unchecked(t, h.gram().clone()).unwrap();
        assert_eq!(bad.validate(), vec![Violation::NotSelfDual]);
    }

    #[test]
    fn orders_in_h3() {
        let f = Field::Rational;
        let m = SntModule::standard_plane(f, 3).unwrap();
        assert_eq!(m.element_order(&unit_vector(f, 6, 0)), 3);
        assert_eq!(m.element_order(&unit_vector(f, 6, 2)), 1);
        assert_eq!(m.element_order(&vec![f.zero(); 6]), 0);
    }

    #[test]
    fn direct_sum_nilpotency() {
        let f = Field::Rational;
        let m = SntModule::standard(f, &[3, 1]).unwrap();
        assert_eq!(m.dim(), 8);
        assert_eq!(m.nilpotency_index(), 3);
        let m2 = SntModule::standard(f, &[1, 1]).unwrap();
        assert!(m2.t_action().is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let m = SntModule::standard(Field::prime(3).unwrap(), &[2, 1]).unwrap();
        let back = SntModule::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
