use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use snt_core::ring::linalg::inverse;
use snt_core::snt::{decompose, SntModule};
use snt_core::spgroup::{
    block_profile, generator_closure, homogeneous_generators, is_member, lie_algebra_basis, random_element, random_radical_element,
    unipotent_radical_test, HomogeneousIso,
};
use snt_core::{Field, Matrix, TPolyMatrix, TruncPoly};

fn f3() -> Field {
    Field::prime(3).unwrap()
}

#[test]
fn half_swap_is_not_member() {
    let h2 = SntModule::standard(Field::Rational, &[2]).unwrap();
    // e1 <-> e2, t e1 <-> t e2 commutes with t but negates the form.
    let swap = Matrix::from_i64(Field::Rational, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
    assert!(swap.mul(h2.t_action()) == h2.t_action().mul(&swap));
    assert!(!is_member(&h2, &swap).unwrap());
}

#[test]
fn scalar_units() {
    let f = Field::Rational;
    let h2 = SntModule::standard(f, &[2]).unwrap();
    let iso = HomogeneousIso::new(&h2).unwrap();
    let u = TruncPoly::from_i64(f, &[1, 1], 2);
    let zero = TruncPoly::zero(f, 2);
    let diag = |a: &TruncPoly, b: &TruncPoly| TPolyMatrix::from_fn(f, 2, 2, 2, |i, j| if i != j { zero.clone() } else if i == 0 { a.clone() } else { b.clone() });
    let good = diag(&u, &u.inv().unwrap());
    assert!(iso.is_symplectic(&good));
    assert!(is_member(&h2, &iso.to_module(&good).unwrap()).unwrap());
    // The plain scalar (1 + t) scales the form by (1 + t)^2.
    let scalar = diag(&u, &u);
    assert!(!iso.is_symplectic(&scalar));
    assert!(!is_member(&h2, &iso.to_module(&scalar).unwrap()).unwrap());
}

#[test]
fn homogeneous_round_trip() {
    let f = f3();
    let h2 = SntModule::standard(f, &[2]).unwrap();
    let iso = HomogeneousIso::new(&h2).unwrap();
    let gens = homogeneous_generators(&h2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let mut g = Matrix::identity(f, 4);
        for _ in 0..6 {
            g = g.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        let a = iso.from_module(&g);
        assert!(iso.is_symplectic(&a));
        assert_eq!(iso.to_module(&a).unwrap(), g);
        assert!(is_member(&h2, &g).unwrap());
    }
}

#[test]
fn lie_algebra_dimension() {
    // sp_2 over R_2 has dimension 3 * 2 over F.
    assert_eq!(lie_algebra_basis(&SntModule::standard(Field::Rational, &[2]).unwrap()).len(), 6);
    assert_eq!(lie_algebra_basis(&SntModule::standard(f3(), &[1]).unwrap()).len(), 3);
}

#[test]
fn samples_are_members() {
    let m = SntModule::standard(Field::Rational, &[2, 1]).unwrap();
    for seed in 0..100 {
        let g = random_element(&m, seed).unwrap();
        assert!(is_member(&m, g.matrix()).unwrap());
    }
}

#[test]
fn radical_closed_under_inverse() {
    let m = SntModule::standard(Field::Rational, &[3, 1]).unwrap();
    let dec = decompose(&m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let g = random_radical_element(&dec, &mut rng);
        assert!(unipotent_radical_test(&m, &dec, &g).unwrap());
        let prod = g.mul(&inverse(&g).unwrap());
        assert!(is_member(&m, &prod).unwrap() && prod.is_identity());
        assert!(unipotent_radical_test(&m, &dec, &inverse(&g).unwrap()).unwrap());
    }
}

#[test]
fn reduction_mod_t_is_surjective() {
    let h2 = SntModule::standard(f3(), &[2]).unwrap();
    let dec = decompose(&h2).unwrap();
    let group = generator_closure(&homogeneous_generators(&h2).unwrap(), 10_000).unwrap();
    let reduced: BTreeSet<Vec<Vec<String>>> =
        group.iter().map(|g| block_profile(&h2, &dec, g).unwrap().reduced[0][0].to_string_rows()).collect();
    // |Sp_2(F_3)| = |SL_2(F_3)| = 24.
    assert_eq!(reduced.len(), 24);
    assert_eq!(group.len(), 648);
}
