//! Both sides of the colinear theta identity and the comparison report.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::eisenstein::{eisenstein_direct_minus_one, eisenstein_q, eisenstein_q_minus_one, normalizer};
use super::lattice::IntegralLattice;
use super::series::{series_tail, Accumulator, Evaluation};
use super::theta::{theta_basic, theta_colinear, SiegelPoint, TruncationPlan};
use crate::error::{Error, Result};

/// `C = (Σ_j 1/|Aut_j|)^{-1}`.
pub fn mass_constant(aut_orders: &[u128]) -> Result<BigRational> {
    if aut_orders.is_empty() || aut_orders.contains(&0) {
        return Err(Error::InvalidInput("mass data must be a nonempty list of positive orders".into()));
    }
    let s: BigRational =
        aut_orders.iter().map(|&a| BigRational::new(BigInt::from(1), BigInt::from(a))).fold(BigRational::zero(), |x, y| x + y);
    Ok(s.recip())
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// `|E_k(z) - 1| <= |2k/B_k| ζ(k-1) Σ n^{k-1} e^{-2π n y}` for `Im z >= y`.
fn eisenstein_bound(k: usize, y: f64) -> f64 {
    let c = normalizer(k).to_f64().unwrap().abs() * (1.0 + 1.0 / (k as f64 - 2.0));
    c * series_tail(|n| (n as f64).powi(k as i32 - 1) * (-2.0 * PI * n as f64 * y).exp(), 1)
}

/// `1 + ½ Σ_{(m,n)=1} Σ_{a >= 1, (a,b)=1} (a Q_τ(m,n) + b)^{-N/2}` by the accelerated evaluator and,
/// optionally, the direct one.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LhsValues {
    pub accelerated: Evaluation,
    pub direct: Option<Evaluation>,
}

fn lhs_with(point: &SiegelPoint, k: usize, inner: impl Fn(Complex64) -> Result<Evaluation>) -> Result<Evaluation> {
    let lam = point.min_eigenvalue();
    let outer_tail = |r: i64| 0.5 * series_tail(|j| 8.0 * j as f64 * eisenstein_bound(k, lam * (j * j) as f64), r as usize + 1);
    let mut r = 1;
    while outer_tail(r) > 1e-21 {
        r += 1;
        if r > 1000 {
            return Err(Error::Truncation { achieved: outer_tail(r), target: 1e-21 });
        }
    }
    let mut acc = Accumulator::new();
    acc.add(Complex64::new(1.0, 0.0));
    let mut tail = outer_tail(r);
    let mut terms = 0;
    for m in -r..=r {
        for n in -r..=r {
            if gcd(m, n) != 1 {
                continue;
            }
            let e = inner(point.quad(m, n))?;
            acc.add(e.value() * 0.5);
            tail += 0.5 * e.tail;
            terms += e.terms;
        }
    }
    Ok(Evaluation::new(acc.value(), tail, terms))
}

pub fn eisenstein_lhs(point: &SiegelPoint, rank: usize, with_direct: bool) -> Result<LhsValues> {
    if rank % 2 == 1 || rank < 8 {
        return Err(Error::InvalidInput(format!("rank {rank}: N/2 must be even and at least 4")));
    }
    let k = rank / 2;
    let accelerated = lhs_with(point, k, |z| eisenstein_q_minus_one(z, k))?;
    let direct = if with_direct { Some(lhs_with(point, k, |z| eisenstein_direct_minus_one(z, k))?) } else { None };
    Ok(LhsValues { accelerated, direct })
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub lattices: Vec<String>,
    pub rank: usize,
    pub point: SiegelPoint,
    pub diagonal_specialization: bool,
    pub constant: String,
    pub lhs: Evaluation,
    pub lhs_direct: Option<Evaluation>,
    pub rhs: Evaluation,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub precision_floor: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn check_genus(lattices: &[IntegralLattice], rank: usize) -> Result<Vec<u128>> {
    if lattices.is_empty() {
        return Err(Error::InvalidInput("no lattices given".into()));
    }
    lattices
        .iter()
        .map(|l| {
            if l.rank() != rank {
                return Err(Error::InvalidInput(format!("{} has rank {}, expected {rank}", l.name, l.rank())));
            }
            if !l.is_even() || !l.is_unimodular() {
                return Err(Error::InvalidInput(format!("{} is not even unimodular", l.name)));
            }
            l.aut_order.ok_or_else(|| Error::InvalidInput(format!("{} has no automorphism group order", l.name)))
        })
        .collect()
}

/// `C Σ_j |Aut_j|^{-1} f(L_j)` with its tail.
fn weighted_rhs(lattices: &[IntegralLattice], auts: &[u128], c: f64, f: impl Fn(&IntegralLattice) -> Result<Evaluation>) -> Result<Evaluation> {
    let mut acc = Accumulator::new();
    let mut tail = 0.0;
    let mut terms = 0;
    for (l, &a) in lattices.iter().zip(auts) {
        let w = c / a as f64;
        let e = f(l)?;
        acc.add(e.value() * w);
        tail += e.tail * w;
        terms += e.terms;
    }
    Ok(Evaluation::new(acc.value(), tail, terms))
}

/// Compares the two sides at `point`. `constant` overrides the mass constant (for harness checks).
/// Fails with [`Error::Truncation`] when `tolerance` is below the attainable precision.
pub fn verify_identity(
    lattices: &[IntegralLattice],
    point: &SiegelPoint,
    rank: usize,
    tolerance: f64,
    with_direct: bool,
    constant: Option<f64>,
) -> Result<IdentityReport> {
    let auts = check_genus(lattices, rank)?;
    let exact = mass_constant(&auts)?;
    let c = constant.unwrap_or_else(|| exact.to_f64().unwrap());
    let lhs = eisenstein_lhs(point, rank, with_direct)?;
    let plan = TruncationPlan::default();
    let rhs = weighted_rhs(lattices, &auts, c, |l| theta_colinear(l, point, &plan))?;
    let lv = lhs.accelerated.value();
    let abs_diff = (lv - rhs.value()).norm();
    let rel_diff = abs_diff / lv.norm();
    let precision_floor = (lhs.accelerated.tail + rhs.tail) / lv.norm() + 32.0 * f64::EPSILON;
    if tolerance < precision_floor {
        return Err(Error::Truncation { achieved: precision_floor, target: tolerance });
    }
    Ok(IdentityReport {
        lattices: lattices.iter().map(|l| l.name.clone()).collect(),
        rank,
        point: *point,
        diagonal_specialization: point.is_diagonal(),
        constant: constant.map_or_else(|| exact.to_string(), |x| x.to_string()),
        lhs: lhs.accelerated,
        lhs_direct: lhs.direct,
        rhs,
        abs_diff,
        rel_diff,
        precision_floor,
        tolerance,
        pass: rel_diff <= tolerance,
    })
}

/// The genus-one identity `E_{N/2}(τ) = C Σ_j |Aut_j|^{-1} θ_{L_j}(τ)`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalReport {
    pub tau: (f64, f64),
    pub eisenstein: Evaluation,
    pub theta: Evaluation,
    pub rel_diff: f64,
}

pub fn classical_identity(lattices: &[IntegralLattice], tau: Complex64, rank: usize) -> Result<ClassicalReport> {
    let auts = check_genus(lattices, rank)?;
    let c = mass_constant(&auts)?.to_f64().unwrap();
    let e = eisenstein_q(tau, rank / 2)?;
    let plan = TruncationPlan::default();
    let theta = weighted_rhs(lattices, &auts, c, |l| theta_basic(l, tau, &plan))?;
    let rel_diff = (e.value() - theta.value()).norm() / e.value().norm();
    Ok(ClassicalReport { tau: (tau.re, tau.im), eisenstein: e, theta, rel_diff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::lattice::E8_AUT_ORDER;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mass_constants() {
        assert_eq!(mass_constant(&[E8_AUT_ORDER]).unwrap(), BigRational::from_integer(BigInt::from(E8_AUT_ORDER)));
        assert_eq!(mass_constant(&[10, 10]).unwrap(), BigRational::from_integer(BigInt::from(5)));
        assert!(mass_constant(&[]).is_err());
    }

    #[test]
    fn lhs_limit() {
        let p = SiegelPoint::diagonal(c(0.0, 25.0), c(0.0, 25.0)).unwrap();
        let v = eisenstein_lhs(&p, 8, false).unwrap();
        assert!((v.accelerated.value() - 1.0).norm() < 1e-30);
    }

    #[test]
    fn e8_identity() {
        let p = SiegelPoint::new(c(0.0, 2.0), c(0.0, 0.5), c(0.0, 2.0)).unwrap();
        let r = verify_identity(&[IntegralLattice::e8()], &p, 8, 1e-8, false, None).unwrap();
        assert!(r.pass, "{r:?}");
        let wrong = verify_identity(&[IntegralLattice::e8()], &p, 8, 1e-8, false, Some(E8_AUT_ORDER as f64 / 2.0)).unwrap();
        assert!(!wrong.pass);
    }

    #[test]
    fn tolerance_below_floor() {
        let p = SiegelPoint::diagonal(c(0.0, 2.0), c(0.0, 2.0)).unwrap();
        assert!(matches!(
            verify_identity(&[IntegralLattice::e8()], &p, 8, 1e-15, false, None),
            Err(Error::Truncation { .. })
        ));
    }
}
