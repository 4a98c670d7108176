//! Theta series of a lattice, plain and summed over colinear pairs.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::lattice::{IntegralLattice, ShellCounts};
use super::series::{series_tail, Accumulator, Evaluation};
use crate::error::{Error, Result};

/// A point `(τ11, τ12, τ22)` of the genus-two Siegel upper half space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SiegelPoint {
    pub tau11: Complex64,
    pub tau12: Complex64,
    pub tau22: Complex64,
}

impl SiegelPoint {
    pub fn new(tau11: Complex64, tau12: Complex64, tau22: Complex64) -> Result<SiegelPoint> {
        let p = SiegelPoint { tau11, tau12, tau22 };
        if !(tau11.im > 0.0 && tau11.im * tau22.im - tau12.im * tau12.im > 0.0) {
            return Err(Error::InvalidInput("imaginary part is not positive definite".into()));
        }
        Ok(p)
    }

    pub fn diagonal(tau1: Complex64, tau2: Complex64) -> Result<SiegelPoint> {
        SiegelPoint::new(tau1, Complex64::new(0.0, 0.0), tau2)
    }

    pub fn is_diagonal(&self) -> bool {
        self.tau12 == Complex64::new(0.0, 0.0)
    }

    /// `Q_τ(m, n) = m^2 τ11 + 2mn τ12 + n^2 τ22`.
    pub fn quad(&self, m: i64, n: i64) -> Complex64 {
        let (m, n) = (m as f64, n as f64);
        self.tau11 * (m * m) + self.tau12 * (2.0 * m * n) + self.tau22 * (n * n)
    }

    /// Smallest eigenvalue of the imaginary part, so `Im Q_τ(m, n) >= λ (m^2 + n^2)`.
    pub fn min_eigenvalue(&self) -> f64 {
        let (a, b, c) = (self.tau11.im, self.tau12.im, self.tau22.im);
        (a + c) / 2.0 - (((a - c) / 2.0).powi(2) + b * b).sqrt()
    }
}

/// Norm bound `B` and target for the reported tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TruncationPlan {
    pub max_norm: i64,
    pub target_tail: f64,
}

impl Default for TruncationPlan {
    fn default() -> TruncationPlan {
        TruncationPlan { max_norm: 40, target_tail: 1e-17 }
    }
}

/// Shell counts up to the smallest bound whose tail estimate meets the plan.
fn shells_for(l: &IntegralLattice, plan: &TruncationPlan, tail_at: impl Fn(i64, i64) -> f64) -> Result<(ShellCounts, i64, f64)> {
    let lambda = l.min_norm();
    let mut b = lambda;
    loop {
        let t = tail_at(b, lambda);
        if t <= plan.target_tail {
            return Ok((l.enumerate_by_norm(b), lambda, t));
        }
        if b >= plan.max_norm {
            return Err(Error::Truncation { achieved: t, target: plan.target_tail });
        }
        b += 1;
    }
}

/// `Σ_{n > B} A(n) e^{-π y n}` with the packing bound `A`.
fn shell_tail(l: &IntegralLattice, lambda: i64, b: i64, y: f64) -> f64 {
    series_tail(|n| l.count_bound(n as f64, lambda) * (-PI * y * n as f64).exp(), b as usize + 1)
}

/// `θ_L(τ) = Σ_u e^{πiτ(u,u)}`, summed by shells.
pub fn theta_basic(l: &IntegralLattice, tau: Complex64, plan: &TruncationPlan) -> Result<Evaluation> {
    if tau.im <= 0.0 {
        return Err(Error::InvalidInput(format!("{tau} is not in the upper half plane")));
    }
    let (shells, _, tail) = shells_for(l, plan, |b, lam| shell_tail(l, lam, b, tau.im))?;
    let mut acc = Accumulator::new();
    for (n, &c) in shells.counts.iter().enumerate() {
        if c > 0 {
            acc.add((Complex64::new(0.0, PI) * tau * n as f64).exp() * c as f64);
        }
    }
    Ok(Evaluation::new(acc.value(), tail, shells.counts.len()))
}

/// Coefficients of `θ_L` in `q = e^{2πiτ}` for an even lattice: `c(2n)`, `n = 0..order`.
pub fn theta_q_coefficients(l: &IntegralLattice, order: usize) -> Result<Vec<u64>> {
    if !l.is_even() {
        return Err(Error::InvalidInput("lattice is not even".into()));
    }
    let shells = l.enumerate_by_norm(2 * order as i64 - 2);
    Ok((0..order).map(|n| shells.count(2 * n as i64)).collect())
}

/// `Σ_{r > R} 8r e^{-a r^2}`: points of `Z^2` outside the box `max(|m|, |n|) <= R`.
fn box_tail(a: f64, r: i64) -> f64 {
    series_tail(|j| 8.0 * j as f64 * (-a * (j * j) as f64).exp(), r as usize + 1)
}

/// `Θ(s) - 1 = Σ_{(m,n) ≠ 0} e^{πi s Q_τ(m,n)}` for a real scale `s > 0`.
pub fn binary_theta_minus_one(point: &SiegelPoint, s: f64) -> Evaluation {
    let a = PI * s * point.min_eigenvalue();
    let mut r = 1;
    while box_tail(a, r) > 1e-22 {
        r += 1;
    }
    let mut acc = Accumulator::new();
    for m in -r..=r {
        for n in -r..=r {
            if m == 0 && n == 0 {
                continue;
            }
            acc.add((Complex64::new(0.0, PI * s) * point.quad(m, n)).exp());
        }
    }
    Evaluation::new(acc.value(), box_tail(a, r), ((2 * r + 1) * (2 * r + 1)) as usize)
}

/// `Σ_{u, v colinear} e^{πi(τ11 (u,u) + 2τ12 (u,v) + τ22 (v,v))}`, grouped as
/// `1 + ½ Σ_{w primitive} [Θ((w,w)) - 1]` with nonzero colinear pairs written `(mw, nw)`.
pub fn theta_colinear(l: &IntegralLattice, point: &SiegelPoint, plan: &TruncationPlan) -> Result<Evaluation> {
    let lam_tau = point.min_eigenvalue();
    // |Θ(s) - 1| <= Σ_{r >= 1} 8r e^{-π s λ r^2}
    let theta_bound = |s: f64| box_tail(PI * s * lam_tau, 0);
    let tail_at = |b: i64, lam: i64| series_tail(|n| l.count_bound(n as f64, lam) * theta_bound(n as f64), b as usize + 1) / 2.0;
    let (shells, _, tail) = shells_for(l, plan, tail_at)?;
    let prim = shells.primitive();
    let mut acc = Accumulator::new();
    let mut inner_tail = 0.0;
    acc.add(Complex64::new(1.0, 0.0));
    for (n, &c) in prim.iter().enumerate().skip(1) {
        if c == 0 {
            continue;
        }
        let t = binary_theta_minus_one(point, n as f64);
        acc.add(t.value() * (c as f64 / 2.0));
        inner_tail += t.tail * c as f64 / 2.0;
    }
    Ok(Evaluation::new(acc.value(), tail + inner_tail, prim.len()))
}

/// The same sum for `τ12 = 0`, regrouped as `1 + ½ Σ_w [θ((w,w) τ1) θ((w,w) τ2) - 1]` with the
/// one-variable `θ(z) = Σ_m e^{πi z m^2}`.
pub fn theta_colinear_product(l: &IntegralLattice, tau1: Complex64, tau2: Complex64, plan: &TruncationPlan) -> Result<Evaluation> {
    let point = SiegelPoint::diagonal(tau1, tau2)?;
    let lam_tau = point.min_eigenvalue();
    let theta_bound = |s: f64| box_tail(PI * s * lam_tau, 0);
    let tail_at = |b: i64, lam: i64| series_tail(|n| l.count_bound(n as f64, lam) * theta_bound(n as f64), b as usize + 1) / 2.0;
    let (shells, _, tail) = shells_for(l, plan, tail_at)?;
    // θ(z) - 1
    let theta1 = |z: Complex64| {
        let mut acc = Accumulator::new();
        let mut m: i64 = 1;
        while (-PI * z.im * (m * m) as f64).exp() >= 1e-24 {
            acc.add((Complex64::new(0.0, PI) * z * (m * m) as f64).exp() * 2.0);
            m += 1;
        }
        acc.value()
    };
    let mut acc = Accumulator::new();
    acc.add(Complex64::new(1.0, 0.0));
    for (n, &c) in shells.primitive().iter().enumerate().skip(1) {
        if c > 0 {
            let s = n as f64;
            let (a, b) = (theta1(tau1 * s), theta1(tau2 * s));
            acc.add((a + b + a * b) * (c as f64 / 2.0));
        }
    }
    Ok(Evaluation::new(acc.value(), tail, shells.counts.len()))
}

/// Direct double loop over pairs of vectors of norm at most `bound`, keeping colinear pairs
/// (`(u,v)^2 = (u,u)(v,v)`).
pub fn theta_colinear_direct(l: &IntegralLattice, point: &SiegelPoint, bound: i64) -> Result<Complex64> {
    let vecs = l.vectors_by_norm(bound)?;
    let n = l.rank();
    let gram = l.gram();
    let images: Vec<Vec<i64>> =
        vecs.iter().map(|(x, _)| (0..n).map(|j| (0..n).map(|i| x[i] * gram[i][j]).sum()).collect()).collect();
    let mut acc = Accumulator::new();
    for (ui, (_, nu)) in vecs.iter().enumerate() {
        for (v, nv) in &vecs {
            let uv: i64 = images[ui].iter().zip(v).map(|(a, b)| a * b).sum();
            if uv * uv != nu * nv {
                continue;
            }
            let e = point.tau11 * *nu as f64 + point.tau12 * (2 * uv) as f64 + point.tau22 * *nv as f64;
            acc.add((Complex64::new(0.0, PI) * e).exp());
        }
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::eisenstein::sigma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn e8_q_coefficients() {
        let coeffs = theta_q_coefficients(&IntegralLattice::e8(), 4).unwrap();
        assert_eq!(coeffs[0], 1);
        for n in 1..4 {
            assert_eq!(coeffs[n] as u128, 240 * sigma(3, n as u64));
        }
    }

    #[test]
    fn theta_limits() {
        let e8 = IntegralLattice::e8();
        let v = theta_basic(&e8, c(0.0, 2.0), &TruncationPlan::default()).unwrap();
        assert!(v.im.abs() < 1e-18 && v.re > 1.0);
        let far = theta_basic(&e8, c(0.0, 30.0), &TruncationPlan::default()).unwrap();
        assert!((far.value() - 1.0).norm() < 1e-30);
    }

    #[test]
    fn colinear_direct_matches() {
        let e8 = IntegralLattice::e8();
        let p = SiegelPoint::new(c(0.0, 3.0), c(0.0, 0.5), c(0.0, 3.0)).unwrap();
        let fast = theta_colinear(&e8, &p, &TruncationPlan::default()).unwrap();
        let slow = theta_colinear_direct(&e8, &p, 4).unwrap();
        assert!((fast.value() - slow).norm() < 1e-6);
    }

    #[test]
    fn product_form_agrees() {
        let e8 = IntegralLattice::e8();
        let (t1, t2) = (c(0.2, 1.5), c(-0.1, 2.0));
        let p = SiegelPoint::diagonal(t1, t2).unwrap();
        let a = theta_colinear(&e8, &p, &TruncationPlan::default()).unwrap();
        let b = theta_colinear_product(&e8, t1, t2, &TruncationPlan::default()).unwrap();
        assert!((a.value() - b.value()).norm() < 1e-14);
    }

    #[test]
    fn invalid_point() {
        assert!(SiegelPoint::new(c(0.0, 1.0), c(0.0, 2.0), c(0.0, 1.0)).is_err());
    }
}
