//! `Sp(M, t) ≅ Sp_{2n}(F[t]/(t^k))` for `M ≅ H_k^{⊕n}`.

use crate::error::{Error, Result};
use crate::ring::{Field, Matrix, TPolyMatrix, TruncPoly};
use crate::snt::{decompose, Decomposition, SntModule};

/// Coordinates: slot `a < n` is `e1` of copy `a`, slot `n + a` is `e2` of copy `a`.
/// The `R_k`-valued form is `Ĵ = [[0, I], [-I, 0]]`; the `F`-form is its `t^{k-1}` coefficient.
#[derive(Clone, Debug)]
pub struct HomogeneousIso {
    dec: Decomposition,
    k: usize,
    n: usize,
}

impl HomogeneousIso {
    pub fn new(m: &SntModule) -> Result<HomogeneousIso> {
        let dec = decompose(m)?;
        let k = dec.partition[0];
        if dec.partition.iter().any(|&x| x != k) {
            return Err(Error::NotHomogeneous);
        }
        let n = dec.partition.len();
        Ok(HomogeneousIso { dec, k, n })
    }

    pub fn level(&self) -> usize {
        self.k
    }

    pub fn copies(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.dec.from_standard.field()
    }

    fn pos(&self, slot: usize, s: usize) -> usize {
        let (half, copy) = if slot < self.n { (0, slot) } else { (1, slot - self.n) };
        self.dec.std_index(copy, half, s)
    }

    /// `Ĵ` over `R_k`.
    pub fn standard_form(&self) -> TPolyMatrix {
        let (f, k, n) = (self.field(), self.k, self.n);
        TPolyMatrix::from_fn(f, k, 2 * n, 2 * n, |i, j| {
            if j == i + n {
                TruncPoly::one(f, k)
            } else if i == j + n {
                TruncPoly::one(f, k).neg()
            } else {
                TruncPoly::zero(f, k)
            }
        })
    }

    pub fn is_symplectic(&self, a: &TPolyMatrix) -> bool {
        let j = self.standard_form();
        a.mul(&j).mul(&a.transpose()) == j
    }

    /// `Sp_{2n}(R_k) → Sp(M, t)`.
    pub fn to_module(&self, a: &TPolyMatrix) -> Result<Matrix> {
        let (f, k, n) = (self.field(), self.k, self.n);
        if a.rows() != 2 * n || a.cols() != 2 * n || a.precision() != k {
            return Err(Error::DimensionMismatch(format!("expected a {0}x{0} matrix over F[t]/(t^{k})", 2 * n)));
        }
        let dim = 2 * n * k;
        let mut g = Matrix::zeros(f, dim, dim);
        for i in 0..2 * n {
            for j in 0..2 * n {
                let x = a.get(i, j);
                for r in 0..k {
                    let c = x.coeff(r);
                    if c.is_zero() {
                        continue;
                    }
                    for s in 0..k - r {
                        g[(self.pos(i, s), self.pos(j, s + r))] = c.clone();
                    }
                }
            }
        }
        Ok(self.dec.to_standard.mul(&g).mul(&self.dec.from_standard))
    }

    /// `Sp(M, t) → Sp_{2n}(R_k)`: read the images of the generators `e1`, `e2` of each copy.
    pub fn from_module(&self, g: &Matrix) -> TPolyMatrix {
        let (f, k, n) = (self.field(), self.k, self.n);
        let gs = self.dec.from_standard.mul(g).mul(&self.dec.to_standard);
        TPolyMatrix::from_fn(f, k, 2 * n, 2 * n, |i, j| {
            let c: Vec<_> = (0..k).map(|r| gs[(self.pos(i, 0), self.pos(j, r))].clone()).collect();
            TruncPoly::from_coeffs(f, &c, k)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spgroup::membership::is_member;

    #[test]
    fn identity_roundtrip() {
        let f = Field::prime(5).unwrap();
        let m = SntModule::standard(f, &[2, 2]).unwrap();
        let iso = HomogeneousIso::new(&m).unwrap();
        let id = TPolyMatrix::identity(f, 2, 4);
        let g = iso.to_module(&id).unwrap();
        assert!(g.is_identity());
        assert_eq!(iso.from_module(&g), id);
    }

    #[test]
    fn diagonal_unit_element() {
        let f = Field::Rational;
        let m = SntModule::standard_plane(f, 2).unwrap();
        let iso = HomogeneousIso::new(&m).unwrap();
        let u = TruncPoly::from_i64(f, &[1, 1], 2);
        let a = TPolyMatrix::from_fn(f, 2, 2, 2, |i, j| match (i, j) {
            (0, 0) => u.clone(),
            (1, 1) => u.inv().unwrap(),
            _ => TruncPoly::zero(f, 2),
        });
        assert!(iso.is_symplectic(&a));
        let g = iso.to_module(&a).unwrap();
        assert!(is_member(&m, &g).unwrap());
        assert_eq!(iso.from_module(&g), a);
        // (1+t) on both slots is not symplectic: det = (1+t)^2
        let b = TPolyMatrix::from_fn(f, 2, 2, 2, |i, j| if i == j { u.clone() } else { TruncPoly::zero(f, 2) });
        assert!(!iso.is_symplectic(&b));
        assert!(!is_member(&m, &iso.to_module(&b).unwrap()).unwrap());
    }

    #[test]
    fn non_homogeneous_rejected() {
        let m = SntModule::standard(Field::Rational, &[2, 1]).unwrap();
        assert!(matches!(HomogeneousIso::new(&m), Err(Error::NotHomogeneous)));
    }
}
