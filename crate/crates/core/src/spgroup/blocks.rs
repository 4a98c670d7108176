//! Block decomposition of `g ∈ Sp(M, t)` along the homogeneous pieces `M(l_1), ..., M(l_s)`.

use serde::Serialize;

use super::levels;
use super::membership::is_member;
use crate::error::{Error, Result};
use crate::ring::Matrix;
use crate::snt::{Decomposition, SntModule};

/// Blocks of `g` in standard coordinates, indexed `[source level][target level]`.
///
/// `reduced[i][j]` is the mod-`t` block `M(l_i)/t → M(l_j)/t` on the `2 r` generators of each level;
/// rows are sources, so the paper's vanishing condition (target above source) makes it block upper triangular.
#[derive(Clone, Debug, Serialize)]
pub struct BlockProfile {
    pub levels: Vec<usize>,
    pub multiplicities: Vec<usize>,
    pub blocks: Vec<Vec<Matrix>>,
    pub reduced: Vec<Vec<Matrix>>,
    /// Gram matrix of the bar-form `<a, t^{l-1} b>` on the generators of each level.
    pub bar_grams: Vec<Matrix>,
}

impl BlockProfile {
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.levels.len()).all(|i| (0..i).all(|j| self.reduced[i][j].is_zero()))
    }

    pub fn diagonal_preserves_bar_form(&self) -> bool {
        (0..self.levels.len()).all(|i| {
            let s = &self.reduced[i][i];
            s.mul(&self.bar_grams[i]).mul(&s.transpose()) == self.bar_grams[i]
        })
    }

    pub fn diagonal_is_identity(&self) -> bool {
        (0..self.levels.len()).all(|i| self.reduced[i][i].is_identity())
    }
}

pub fn block_profile(m: &SntModule, dec: &Decomposition, g: &Matrix) -> Result<BlockProfile> {
    if !is_member(m, g)? {
        return Err(Error::NotMember);
    }
    let gs = dec.from_standard.mul(g).mul(&dec.to_standard);
    let std = dec.standard_module();
    let lv = levels(dec);
    let idx: Vec<Vec<usize>> = lv.iter().map(|l| l.indices(dec)).collect();
    let reps: Vec<Vec<usize>> = lv.iter().map(|l| l.reps(dec)).collect();
    let s = lv.len();
    let blocks = (0..s).map(|i| (0..s).map(|j| gs.select(&idx[i], &idx[j])).collect()).collect();
    let reduced = (0..s).map(|i| (0..s).map(|j| gs.select(&reps[i], &reps[j])).collect()).collect();
    let f = m.field();
    let n = m.dim();
    let bar_grams = lv
        .iter()
        .zip(&reps)
        .map(|(l, r)| {
            let tp = std.t_action().pow(l.length - 1);
            Matrix::from_fn(f, r.len(), r.len(), |a, b| {
                let ea = crate::ring::matrix::unit_vector(f, n, r[a]);
                let eb = crate::ring::matrix::unit_vector(f, n, r[b]);
                std.pair(&ea, &tp.apply(&eb))
            })
        })
        .collect();
    Ok(BlockProfile {
        levels: lv.iter().map(|l| l.length).collect(),
        multiplicities: lv.iter().map(|l| l.multiplicity()).collect(),
        blocks,
        reduced,
        bar_grams,
    })
}

/// Whether `g` lies in the unipotent radical: every reduced diagonal block is the identity.
pub fn unipotent_radical_test(m: &SntModule, dec: &Decomposition, g: &Matrix) -> Result<bool> {
    Ok(block_profile(m, dec, g)?.diagonal_is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;
    use crate::snt::decompose;

    #[test]
    fn identity_profile() {
        let f = Field::Rational;
        let m = SntModule::standard(f, &[2, 1]).unwrap();
        let d = decompose(&m).unwrap();
        let p = block_profile(&m, &d, &Matrix::identity(f, 6)).unwrap();
        assert_eq!(p.levels, vec![2, 1]);
        assert!(p.is_upper_triangular() && p.diagonal_preserves_bar_form() && p.diagonal_is_identity());
        assert!(unipotent_radical_test(&m, &d, &Matrix::identity(f, 6)).unwrap());
    }

    #[test]
    fn non_member_rejected() {
        let f = Field::Rational;
        let m = SntModule::standard(f, &[1]).unwrap();
        let d = decompose(&m).unwrap();
        let g = Matrix::from_i64(f, &[&[2, 0], &[0, 1]]);
        assert!(matches!(block_profile(&m, &d, &g), Err(Error::NotMember)));
    }
}
