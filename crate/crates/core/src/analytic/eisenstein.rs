//! Level-one Eisenstein series `E_k(z) = ½ Σ_{(m,n)=1} (mz + n)^{-k}`, evaluated two independent ways.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::series::{series_tail, Accumulator, Evaluation};
use crate::error::{Error, Result};

/// Bernoulli number `B_k` (with `B_1 = -1/2`).
pub fn bernoulli(k: usize) -> BigRational {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=k {
        let mut s = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            s += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b.pop().unwrap()
}

/// `-2k / B_k`, the coefficient of `σ_{k-1}(n) q^n`.
pub fn normalizer(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(-2 * k as i64)) / bernoulli(k)
}

/// `ζ(k)` for even `k` from `B_k`.
pub fn zeta_even(k: usize) -> f64 {
    let b = bernoulli(k).to_f64().unwrap();
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    let sign = if (k / 2) % 2 == 1 { 1.0 } else { -1.0 };
    sign * b * (2.0 * PI).powi(k as i32) / (2.0 * fact)
}

/// `σ_p(n) = Σ_{d | n} d^p`.
pub fn sigma(p: u32, n: u64) -> u128 {
    let mut s = 0u128;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += (d as u128).pow(p);
            let e = n / d;
            if e != d {
                s += (e as u128).pow(p);
            }
        }
        d += 1;
    }
    s
}

fn check_weight(k: usize) -> Result<()> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidInput(format!("weight {k} must be even and at least 4")));
    }
    Ok(())
}

fn check_upper(z: Complex64) -> Result<()> {
    if z.im <= 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidInput(format!("{z} is not in the upper half plane")));
    }
    Ok(())
}

/// `E_k(z) - 1` from the `q`-expansion `Σ (-2k/B_k) σ_{k-1}(n) q^n`, `q = e^{2πiz}`.
pub fn eisenstein_q_minus_one(z: Complex64, k: usize) -> Result<Evaluation> {
    check_weight(k)?;
    check_upper(z)?;
    let c = normalizer(k).to_f64().unwrap();
    let zeta_bound = 1.0 + 1.0 / (k as f64 - 2.0);
    let absq = (-2.0 * PI * z.im).exp();
    let bound = |n: usize| c.abs() * zeta_bound * (n as f64).powi(k as i32 - 1) * absq.powi(n as i32);
    let q = Complex64::new(0.0, 2.0 * PI * z.re).exp() * absq;
    let mut acc = Accumulator::new();
    let mut magnitude = 0.0;
    let mut qn = Complex64::new(1.0, 0.0);
    let mut n = 0usize;
    loop {
        n += 1;
        qn *= q;
        let term = qn * (c * sigma(k as u32 - 1, n as u64) as f64);
        magnitude += term.norm();
        acc.add(term);
        let decreasing = (n as f64) > (k as f64 - 1.0) / (2.0 * PI * z.im);
        if decreasing && bound(n + 1) < 1e-22 {
            break;
        }
        if n > 100_000 {
            return Err(Error::Truncation { achieved: bound(n + 1), target: 1e-22 });
        }
    }
    // q^n is formed by repeated multiplication, so its relative error grows like n ε.
    let rounding = 4.0 * (n as f64 + 2.0) * f64::EPSILON * magnitude;
    Ok(Evaluation::new(acc.value(), series_tail(bound, n + 1) + rounding, n))
}

pub fn eisenstein_q(z: Complex64, k: usize) -> Result<Evaluation> {
    let e = eisenstein_q_minus_one(z, k)?;
    Ok(Evaluation::new(e.value() + 1.0, e.tail, e.terms))
}

/// `(2π)^k / (k-1)! Σ_{r >= 1} r^{k-1} e^{-2π r y}`, bounding `|Σ_{n ∈ Z} (w + n)^{-k}|` for `Im w = y`.
pub fn row_bound(k: usize, y: f64) -> f64 {
    let fact: f64 = (1..k).map(|i| i as f64).product();
    let c = (2.0 * PI).powi(k as i32) / fact;
    c * series_tail(|r| (r as f64).powi(k as i32 - 1) * (-2.0 * PI * r as f64 * y).exp(), 1)
}

const ROW_TERMS: i64 = 1000;

/// `Σ_{n ∈ Z} (w + n)^{-k}` by direct summation over `|n| <= N` with midpoint-rule tails, and a bound
/// on the neglected Euler-Maclaurin remainder plus rounding.
pub fn row_sum(w: Complex64, k: usize) -> (Complex64, f64) {
    let n = ROW_TERMS;
    let ki = k as i32;
    let mut acc = Accumulator::new();
    let mut magnitude = 0.0;
    for j in -n..=n {
        let term = (w + j as f64).powi(-ki);
        magnitude += term.norm();
        acc.add(term);
    }
    let edge_hi = w + (n as f64 + 0.5);
    let edge_lo = -w + (n as f64 + 0.5);
    let kf = k as f64;
    for e in [edge_hi, edge_lo] {
        // Σ_{m > N} f(m) ≈ ∫_{N+1/2}^∞ f + f'(N+1/2)/24, with f(x) = x^{-k}
        acc.add(e.powi(1 - ki) / (kf - 1.0));
        acc.add(e.powi(-ki - 1) * (-kf / 24.0));
    }
    let rem = 2.0 * 2.0 * 7.0 / 5760.0 * kf * (kf + 1.0) * (kf + 2.0) * edge_hi.norm().min(edge_lo.norm()).powi(-ki - 3);
    let rounding = 4.0 * (kf + 2.0) * f64::EPSILON * magnitude;
    (acc.value(), rem + rounding)
}

/// `E_k(z) - 1 = ζ(k)^{-1} Σ_{m >= 1} Σ_{n ∈ Z} (mz + n)^{-k}`: the coprime sum after Möbius sieving.
pub fn eisenstein_direct_minus_one(z: Complex64, k: usize) -> Result<Evaluation> {
    check_weight(k)?;
    check_upper(z)?;
    let zeta = zeta_even(k);
    let mut acc = Accumulator::new();
    let mut err = 0.0;
    let mut m = 0usize;
    loop {
        m += 1;
        let (s, e) = row_sum(z * m as f64, k);
        acc.add(s / zeta);
        err += e / zeta;
        if row_bound(k, (m + 1) as f64 * z.im) < 1e-22 {
            break;
        }
        if m > 10_000 {
            return Err(Error::Truncation { achieved: row_bound(k, m as f64 * z.im), target: 1e-22 });
        }
    }
    let tail = series_tail(|j| row_bound(k, j as f64 * z.im), m + 1) / zeta + err;
    Ok(Evaluation::new(acc.value(), tail, m))
}

pub fn eisenstein_direct(z: Complex64, k: usize) -> Result<Evaluation> {
    let e = eisenstein_direct_minus_one(z, k)?;
    Ok(Evaluation::new(e.value() + 1.0, e.tail, e.terms))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Rank1 {
    pub q_expansion: Evaluation,
    pub direct: Evaluation,
}

/// `½ Σ_{(m,n)=1} (mτ + n)^{-w}` by both evaluators.
pub fn eisenstein_rank1(tau: Complex64, weight: usize) -> Result<Rank1> {
    Ok(Rank1 { q_expansion: eisenstein_q(tau, weight)?, direct: eisenstein_direct(tau, weight)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(4), BigRational::new(BigInt::from(-1), BigInt::from(30)));
        assert_eq!(normalizer(4), BigRational::from_integer(BigInt::from(240)));
        assert_eq!(normalizer(6), BigRational::from_integer(BigInt::from(-504)));
        assert!((zeta_even(4) - PI.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(3, 1), 1);
        assert_eq!(sigma(3, 6), 1 + 8 + 27 + 216);
        assert_eq!(sigma(1, 12), 28);
    }

    #[test]
    fn dual_evaluators_agree() {
        for y in [1.5, 2.0, 3.0] {
            let r = eisenstein_rank1(Complex64::new(0.1, y), 4).unwrap();
            let d = (r.q_expansion.value() - r.direct.value()).norm();
            assert!(d < 1e-12, "y={y}: {d}");
        }
        let r = eisenstein_rank1(Complex64::new(0.3, 1.2), 6).unwrap();
        assert!((r.q_expansion.value() - r.direct.value()).norm() < 1e-12);
    }

    #[test]
    fn large_imaginary_part() {
        let e = eisenstein_q(Complex64::new(0.0, 20.0), 4).unwrap();
        assert!((e.value() - 1.0).norm() < 1e-40);
    }

    #[test]
    fn rejects_bad_weight() {
        assert!(eisenstein_q(Complex64::new(0.0, 1.0), 3).is_err());
        assert!(eisenstein_q(Complex64::new(0.0, -1.0), 4).is_err());
    }
}
