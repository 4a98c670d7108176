//! Generating sets, exhaustive closure of finite groups, and orbits on subspaces.

use std::collections::{HashSet, VecDeque};

use super::homogeneous::HomogeneousIso;
use super::lie::lie_algebra_basis;
use super::levels;
use super::membership::is_member;
use super::sample::{cayley, embed_level_constant, symplectic_transvection};
use crate::error::Result;
use crate::guard::check_size;
use crate::ring::{Matrix, Subspace, TPolyMatrix, TruncPoly};
use crate::snt::{decompose, SntModule};

/// `|Sp_{2n}(F_q[t]/(t^k))| = |Sp_{2n}(F_q)| · q^{(k-1) n (2n+1)}`.
pub fn sp_order(q: u64, n: u32, k: u32) -> u128 {
    let q = q as u128;
    let mut o = q.pow(n * n);
    for i in 1..=n {
        o *= q.pow(2 * i) - 1;
    }
    o * q.pow((k - 1) * n * (2 * n + 1))
}

/// All products of the generators, by breadth-first search from the identity.
pub fn generator_closure(gens: &[Matrix], limit: usize) -> Result<Vec<Matrix>> {
    let Some(first) = gens.first() else {
        return Ok(vec![]);
    };
    let id = Matrix::identity(first.field(), first.rows());
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                check_size("group closure", seen.len() as u128, limit as u128)?;
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

/// Orbit of a subspace under the group generated by `gens` (right action).
pub fn orbit_of_subspace(start: &Subspace, gens: &[Matrix]) -> Vec<Subspace> {
    let mut seen: HashSet<Subspace> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.image(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Subspace> = seen.into_iter().collect();
    out.sort();
    out
}

fn symmetric_units(f: crate::ring::Field, r: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in i..r {
            let mut e = Matrix::zeros(f, r, r);
            e[(i, j)] = f.one();
            e[(j, i)] = f.one();
            out.push(e);
        }
    }
    out
}

/// Elementary symplectic generators `[[I, t^s E], [0, I]]`, `[[I, 0], [t^s E], I]]` of `Sp_{2n}(R_k)`,
/// transported to `M`.
pub fn homogeneous_generators(m: &SntModule) -> Result<Vec<Matrix>> {
    let iso = HomogeneousIso::new(m)?;
    let (f, k, n) = (m.field(), iso.level(), iso.copies());
    let mut out = Vec::new();
    for s in 0..k {
        for e in symmetric_units(f, n) {
            for upper in [true, false] {
                let c = symplectic_transvection(&e, upper).sub(&Matrix::identity(f, 2 * n));
                let a = TPolyMatrix::identity(f, k, 2 * n).add(&TPolyMatrix::from_fn(f, k, 2 * n, 2 * n, |i, j| {
                    TruncPoly::constant(c[(i, j)].clone(), k).shift(s)
                }));
                out.push(iso.to_module(&a)?);
            }
        }
    }
    Ok(out)
}

/// Levi transvections on each level together with Cayley transforms of a Lie algebra basis.
pub fn standard_generators(m: &SntModule) -> Result<Vec<Matrix>> {
    let dec = decompose(m)?;
    let f = m.field();
    let mut out = Vec::new();
    for level in levels(&dec) {
        let r = level.multiplicity();
        for e in symmetric_units(f, r) {
            for upper in [true, false] {
                let mut h = Matrix::identity(f, m.dim());
                embed_level_constant(&dec, &level, &symplectic_transvection(&e, upper), &mut h);
                out.push(dec.to_standard.mul(&h).mul(&dec.from_standard));
            }
        }
    }
    for s in lie_algebra_basis(m) {
        if let Some(c) = cayley(&s) {
            out.push(c);
        }
    }
    out.retain(|g| is_member(m, g).unwrap_or(false) && !g.is_identity());
    out.dedup();
    Ok(out)
}
