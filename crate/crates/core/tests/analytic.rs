use num_complex::Complex64;

use snt_core::analytic::eisenstein::{eisenstein_direct, sigma};
use snt_core::analytic::{
    classical_identity, eisenstein_lhs, eisenstein_q, mass_constant, theta_colinear, theta_colinear_direct, theta_colinear_product,
    verify_identity, IntegralLattice, SiegelPoint, TruncationPlan, E8_AUT_ORDER,
};
use snt_core::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn e8_shells() {
    let e8 = IntegralLattice::e8();
    assert_eq!(e8.rank(), 8);
    assert!(e8.is_even() && e8.is_unimodular());
    let shells = e8.enumerate_by_norm(4);
    assert_eq!(shells.count(2), 240);
    assert_eq!(shells.count(4), 2160);
    assert_eq!(shells.count(1) + shells.count(3), 0);
    assert_eq!(e8.min_norm(), 2);
}

#[test]
fn e8_shells_match_divisor_sums() {
    let shells = IntegralLattice::e8().enumerate_by_norm(12);
    for n in 1..=6u64 {
        assert_eq!(shells.count(2 * n as i64) as u128, 240 * sigma(3, n));
    }
}

#[test]
fn weyl_group_order() {
    // |W(E8)| is the product of the degrees of the basic invariants.
    let degrees: [u128; 8] = [2, 8, 12, 14, 18, 20, 24, 30];
    assert_eq!(degrees.iter().product::<u128>(), E8_AUT_ORDER);
    assert_eq!(E8_AUT_ORDER, (1 << 14) * 3u128.pow(5) * 25 * 7);
    assert_eq!(mass_constant(&[E8_AUT_ORDER]).unwrap().to_integer(), E8_AUT_ORDER.into());
}

#[test]
fn eisenstein_dual_evaluators() {
    for tau in [c(0.0, 2.0), c(0.25, 1.0), c(-0.4, 3.0)] {
        let q = eisenstein_q(tau, 4).unwrap();
        let d = eisenstein_direct(tau, 4).unwrap();
        assert!((q.value() - d.value()).norm() < 1e-8);
        // Each reported tail brackets the other evaluator.
        let gap = (q.value() - d.value()).norm();
        assert!(gap <= q.tail + d.tail + 2.0 * f64::EPSILON, "gap {gap:e}, tails {:e} {:e}", q.tail, d.tail);
    }
}

#[test]
fn classical_e8() {
    for y in [1.5, 2.0, 3.0] {
        let r = classical_identity(&[IntegralLattice::e8()], c(0.0, y), 8).unwrap();
        assert!(r.rel_diff < 1e-8, "y = {y}: {}", r.rel_diff);
    }
}

#[test]
fn colinear_direct_double_loop() {
    let e8 = IntegralLattice::e8();
    let p = SiegelPoint::new(c(0.0, 3.0), c(0.0, 0.5), c(0.0, 3.0)).unwrap();
    let fast = theta_colinear(&e8, &p, &TruncationPlan::default()).unwrap().value();
    let slow = theta_colinear_direct(&e8, &p, 4).unwrap();
    assert!((fast - slow).norm() < 1e-6);
}

#[test]
fn product_form_at_equal_truncation() {
    let e8 = IntegralLattice::e8();
    let (t1, t2) = (c(0.1, 1.8), c(0.0, 2.2));
    let p = SiegelPoint::diagonal(t1, t2).unwrap();
    let a = theta_colinear(&e8, &p, &TruncationPlan::default()).unwrap();
    let b = theta_colinear_product(&e8, t1, t2, &TruncationPlan::default()).unwrap();
    assert!((a.value() - b.value()).norm() < 1e-14);
}

#[test]
fn lhs_accelerated_vs_direct() {
    let p = SiegelPoint::new(c(0.0, 2.0), c(0.0, 0.5), c(0.0, 2.0)).unwrap();
    let v = eisenstein_lhs(&p, 8, true).unwrap();
    let (a, d) = (v.accelerated.value(), v.direct.unwrap().value());
    assert!((a - d).norm() / a.norm() < 1e-3);
}

#[test]
fn headline_identity_and_perturbation() {
    let e8 = [IntegralLattice::e8()];
    let p = SiegelPoint::new(c(0.0, 2.0), c(0.0, 0.5), c(0.0, 2.0)).unwrap();
    let r = verify_identity(&e8, &p, 8, 1e-8, false, None).unwrap();
    assert!(r.pass && !r.diagonal_specialization);
    assert!(r.precision_floor < 1e-8);
    let wrong = verify_identity(&e8, &p, 8, 1e-8, false, Some(E8_AUT_ORDER as f64 / 2.0)).unwrap();
    assert!(!wrong.pass);
    // Halving C halves the whole right side.
    let expected = (r.rhs.value() * 0.5 - r.lhs.value()).norm();
    assert!((wrong.abs_diff - expected).abs() < 1e-12 && wrong.rel_diff > 0.4);
    let diag = SiegelPoint::diagonal(c(0.0, 2.0), c(0.0, 2.0)).unwrap();
    assert!(verify_identity(&e8, &diag, 8, 1e-8, false, None).unwrap().diagonal_specialization);
}

#[test]
fn unattainable_tolerance() {
    let p = SiegelPoint::new(c(0.0, 2.0), c(0.0, 0.5), c(0.0, 2.0)).unwrap();
    assert!(matches!(verify_identity(&[IntegralLattice::e8()], &p, 8, 1e-15, false, None), Err(Error::Truncation { .. })));
}

#[test]
fn rejects_bad_lattices() {
    assert!(IntegralLattice::new("odd", vec![vec![1, 0], vec![0, 1]], Some(8)).is_ok());
    let z2 = IntegralLattice::new("z2", vec![vec![1, 0], vec![0, 1]], Some(8)).unwrap();
    let p = SiegelPoint::diagonal(c(0.0, 2.0), c(0.0, 2.0)).unwrap();
    assert!(verify_identity(&[z2], &p, 2, 1e-8, false, None).is_err());
    assert!(IntegralLattice::new("indef", vec![vec![0, 1], vec![1, 0]], None).is_err());
}
