//! Truncated polynomials: the local ring `F[t]/(t^K)`.

use std::fmt;

use serde::Serialize;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// An element of `F[t]/(t^K)`, coefficients in ascending degree, length exactly `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl TruncPoly {
    pub fn zero(field: Field, k: usize) -> TruncPoly {
        assert!(k >= 1, "truncation order must be positive");
        TruncPoly { field, coeffs: vec![field.zero(); k] }
    }

    pub fn one(field: Field, k: usize) -> TruncPoly {
        TruncPoly::constant(field.one(), k)
    }

    pub fn constant(c: Scalar, k: usize) -> TruncPoly {
        let mut p = TruncPoly::zero(c.field(), k);
        p.coeffs[0] = c;
        p
    }

    /// `t^e`, which is zero when `e >= K`.
    pub fn t_pow(field: Field, e: usize, k: usize) -> TruncPoly {
        let mut p = TruncPoly::zero(field, k);
        if e < k {
            p.coeffs[e] = field.one();
        }
        p
    }

    /// Builds from coefficients, padding with zeros or dropping terms of degree `>= k`.
    pub fn from_coeffs(field: Field, coeffs: &[Scalar], k: usize) -> TruncPoly {
        let mut p = TruncPoly::zero(field, k);
        for (i, c) in coeffs.iter().take(k).enumerate() {
            assert_eq!(c.field(), field, "coefficient field mismatch");
            p.coeffs[i] = c.clone();
        }
        p
    }

    pub fn from_i64(field: Field, coeffs: &[i64], k: usize) -> TruncPoly {
        let c: Vec<Scalar> = coeffs.iter().map(|&x| field.from_i64(x)).collect();
        TruncPoly::from_coeffs(field, &c, k)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: Scalar) {
        self.coeffs[i] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// The t-adic valuation; `K` for the zero element.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.order())
    }

    fn check(&self, other: &TruncPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.order() != other.order() {
            return Err(Error::PrecisionMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &TruncPoly) -> TruncPoly {
        debug_assert_eq!(self.order(), other.order());
        TruncPoly { field: self.field, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &TruncPoly) -> TruncPoly {
        debug_assert_eq!(self.order(), other.order());
        TruncPoly { field: self.field, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> TruncPoly {
        TruncPoly { field: self.field, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> TruncPoly {
        TruncPoly { field: self.field, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Truncated convolution. Panics on mismatched orders; see [`TruncPoly::checked_mul`].
    pub fn mul(&self, other: &TruncPoly) -> TruncPoly {
        assert_eq!(self.order(), other.order(), "truncation order mismatch");
        let k = self.order();
        let mut out = TruncPoly::zero(self.field, k);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(k - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        out
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: usize) -> TruncPoly {
        let k = self.order();
        let mut out = TruncPoly::zero(self.field, k);
        for i in 0..k.saturating_sub(e) {
            out.coeffs[i + e] = self.coeffs[i].clone();
        }
        out
    }

    /// Exact division by `t^e`; the low `e` coefficients must vanish. The top `e` coefficients become zero.
    pub fn unshift(&self, e: usize) -> Option<TruncPoly> {
        if self.coeffs.iter().take(e).any(|c| !c.is_zero()) {
            return None;
        }
        let k = self.order();
        let mut out = TruncPoly::zero(self.field, k);
        for i in e..k {
            out.coeffs[i - e] = self.coeffs[i].clone();
        }
        Some(out)
    }

    pub fn inv(&self) -> Result<TruncPoly> {
        let a0inv = self.coeffs[0].inv().ok_or(Error::NotAUnit)?;
        let k = self.order();
        let mut b = TruncPoly::zero(self.field, k);
        b.coeffs[0] = a0inv.clone();
        for n in 1..k {
            let mut s = self.field.zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() && !b.coeffs[n - i].is_zero() {
                    s += &(&self.coeffs[i] * &b.coeffs[n - i]);
                }
            }
            b.coeffs[n] = -&(&s * &a0inv);
        }
        Ok(b)
    }

    /// Reinterprets at another truncation order, dropping or zero-padding coefficients.
    pub fn truncate(&self, k: usize) -> TruncPoly {
        TruncPoly::from_coeffs(self.field, &self.coeffs, k)
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for TruncPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}
