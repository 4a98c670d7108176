use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use snt_core::ring::linalg::rank;
use snt_core::snt::lagrangian::{is_t_lagrangian_space, standard_indices};
use snt_core::snt::{
    decompose, enumerate_t_lagrangians, fw_dimension, quasi_basis, rho_of, standard_t_lagrangian, LagrangianFlag, SntModule, Violation,
};
use snt_core::spgroup::{orbit_of_subspace, random_symplectic, standard_generators};
use snt_core::{Field, Matrix, Subspace};

fn f3() -> Field {
    Field::prime(3).unwrap()
}

#[test]
fn standard_plane_shape() {
    let h2 = SntModule::standard_plane(Field::Rational, 2).unwrap();
    let g = h2.gram();
    let nonzero: Vec<_> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|&(i, j)| !g[(i, j)].is_zero()).collect();
    assert_eq!(nonzero.len(), 4);
    for (i, j) in nonzero {
        let x = &g[(i, j)];
        assert!(x.is_one() || (-x.clone()).is_one());
    }
    let t = h2.t_action();
    assert!(!t.is_zero() && t.mul(t).is_zero());
    for k in 1..=6 {
        assert!(SntModule::standard_plane(f3(), k).unwrap().validate().is_empty());
    }
}

#[test]
fn direct_sum_roundtrip() {
    for (a, b) in [(1, 1), (3, 1), (2, 4), (5, 2)] {
        let f = Field::prime(5).unwrap();
        let m = SntModule::standard_plane(f, a).unwrap().direct_sum(&SntModule::standard_plane(f, b).unwrap()).unwrap();
        let mut expected = vec![a, b];
        expected.sort_unstable_by(|x, y| y.cmp(x));
        assert_eq!(decompose(&m).unwrap().partition, expected);
    }
}

#[test]
fn transposed_action_is_not_self_dual() {
    let h2 = SntModule::standard_plane(Field::Rational, 2).unwrap();
    let mut t = h2.t_action().clone();
    // Reverse the chain e1 -> t e1 only.
    t.set_block(0, 0, &h2.t_action().submatrix(0..2, 0..2).transpose());
    let bad = SntModule::new_unchecked(t, h2.gram().clone()).unwrap();
    assert!(bad.validate().contains(&Violation::NotSelfDual));
    assert!(decompose(&bad).is_err());
}

#[test]
fn maximal_order_element() {
    let h3 = SntModule::standard(Field::Rational, &[3]).unwrap();
    let e1 = snt_core::ring::matrix::unit_vector(Field::Rational, 6, 0);
    assert_eq!(h3.element_order(&e1), 3);
    assert_eq!(h3.nilpotency_index(), 3);
}

#[test]
fn base_changed_module_decomposes() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let std = SntModule::standard(Field::Rational, &[3, 1]).unwrap();
    for _ in 0..5 {
        let p = random_symplectic(std.gram(), 8, &mut rng);
        let m = std.base_change(&p).unwrap();
        let dec = decompose(&m).unwrap();
        assert_eq!(dec.partition, vec![3, 1]);
        // Jordan type {3,3,1,1}: rank T = 4, rank T^2 = 2, T^3 = 0.
        let t = m.t_action();
        assert_eq!((rank(t), rank(&t.mul(t)), t.pow(3).is_zero()), (4, 2, true));
    }
}

#[test]
fn self_pairing_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = Field::prime(7).unwrap();
    let m = SntModule::standard(f, &[3, 2, 2]).unwrap();
    for _ in 0..20 {
        let xi: Vec<_> = (0..m.dim()).map(|_| f.from_i64(rng.gen_range(0..7))).collect();
        let mut txi = xi.clone();
        for _ in 0..4 {
            assert!(m.pair(&xi, &txi).is_zero());
            txi = m.apply_t(&txi);
        }
    }
}

#[test]
fn quasi_basis_types_are_unique() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let f = Field::Rational;
    let m = SntModule::standard(f, &[3, 2]).unwrap();
    for _ in 0..10 {
        let gens: Vec<_> = (0..2).map(|_| (0..m.dim()).map(|_| f.from_i64(rng.gen_range(-1..=1))).collect::<Vec<_>>()).collect();
        let closure = m.t_closure(&gens);
        let mut spanning = closure.basis_vectors();
        let a = quasi_basis(&m, &spanning).unwrap();
        spanning.reverse();
        spanning.extend(gens.iter().map(|g| m.apply_t(g)));
        let b = quasi_basis(&m, &spanning).unwrap();
        assert_eq!(a.space(), &closure);
        assert_eq!(a.types(), b.types());
        assert_eq!(a.types().to_vec(), a.smith_types());
    }
}

#[test]
fn standard_lagrangians() {
    for k in 1..=4 {
        let m = SntModule::standard(Field::Rational, &[k]).unwrap();
        let dec = decompose(&m).unwrap();
        for idx in standard_indices(&dec.partition) {
            let l = standard_t_lagrangian(&dec, &idx).unwrap();
            assert!(is_t_lagrangian_space(&m, &l));
        }
    }
    let h2 = SntModule::standard(Field::Rational, &[2]).unwrap();
    let dec = decompose(&h2).unwrap();
    let l1 = standard_t_lagrangian(&dec, &[1]).unwrap();
    // Basis order e1, t e1, e2, t e2.
    let expected = Subspace::span(Field::Rational, 4, &Matrix::from_i64(Field::Rational, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]).row_vectors());
    assert_eq!(l1, expected);
}

#[test]
fn grassmannian_counts() {
    let h1 = SntModule::standard(f3(), &[1]).unwrap();
    assert_eq!(enumerate_t_lagrangians(&h1).unwrap().len(), 4);
    let h2 = SntModule::standard(f3(), &[2]).unwrap();
    let all = enumerate_t_lagrangians(&h2).unwrap();
    assert!(all.iter().all(|u| is_t_lagrangian_space(&h2, u)));
    assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), all.len());
}

#[test]
fn fibers_have_size_q_to_fw_dimension() {
    for part in [vec![1], vec![2], vec![1, 1], vec![2, 1]] {
        let m = SntModule::standard(f3(), &part).unwrap();
        let flag = LagrangianFlag::standard(&m, &decompose(&m).unwrap()).unwrap();
        let mut fibers: BTreeMap<Subspace, (usize, usize)> = BTreeMap::new();
        for u in enumerate_t_lagrangians(&m).unwrap() {
            let rho = rho_of(&m, &flag, &u).unwrap();
            assert!(rho.is_self_dual() && rho.is_t_linear());
            let e = fibers.entry(rho.w.space().clone()).or_insert((0, fw_dimension(&rho.w)));
            e.0 += 1;
        }
        for (w, (count, dim)) in &fibers {
            assert_eq!(*count, 3usize.pow(*dim as u32), "{part:?}: W = {w:?}");
        }
        if part == [1] {
            let sizes: BTreeSet<usize> = fibers.values().map(|v| v.0).collect();
            assert_eq!(sizes, BTreeSet::from([1, 3]));
        }
    }
}

#[test]
fn standard_lagrangians_cover_grassmannian() {
    for part in [vec![2], vec![1, 1], vec![2, 1]] {
        let m = SntModule::standard(f3(), &part).unwrap();
        let dec = decompose(&m).unwrap();
        let gens = standard_generators(&m).unwrap();
        let mut covered = BTreeSet::new();
        for idx in standard_indices(&dec.partition) {
            covered.extend(orbit_of_subspace(&standard_t_lagrangian(&dec, &idx).unwrap(), &gens));
        }
        let all: BTreeSet<Subspace> = enumerate_t_lagrangians(&m).unwrap().into_iter().collect();
        assert_eq!(covered, all, "{part:?}");
    }
}

#[test]
fn json_roundtrip() {
    let m = SntModule::standard(Field::Rational, &[2, 1]).unwrap();
    let back = SntModule::from_json(&m.to_json()).unwrap();
    assert_eq!(back.gram(), m.gram());
    assert_eq!(back.t_action(), m.t_action());
}
