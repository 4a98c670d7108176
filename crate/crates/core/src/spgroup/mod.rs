//! The automorphism group `Sp(M, t)` of an snt-module.

pub mod blocks;
pub mod closure;
pub mod homogeneous;
pub mod lie;
pub mod membership;
pub mod sample;

pub use blocks::{block_profile, unipotent_radical_test, BlockProfile};
pub use closure::{generator_closure, homogeneous_generators, orbit_of_subspace, sp_order, standard_generators};
pub use homogeneous::HomogeneousIso;
pub use lie::lie_algebra_basis;
pub use membership::{is_member, SntAutomorphism};
pub use sample::{random_element, random_levi_element, random_radical_element, random_symplectic, sample_with};

use crate::snt::Decomposition;

/// The copies of `H_l` for one homogeneous level `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub length: usize,
    /// Indices into the decomposition's blocks.
    pub blocks: Vec<usize>,
}

impl Level {
    pub fn multiplicity(&self) -> usize {
        self.blocks.len()
    }

    /// Standard indices of the `t^s`-part for the `2r` symplectic slots: `e1` of each copy, then `e2` of each copy.
    pub fn slot_index(&self, dec: &Decomposition, slot: usize, s: usize) -> usize {
        let r = self.multiplicity();
        let (half, copy) = if slot < r { (0, slot) } else { (1, slot - r) };
        dec.std_index(self.blocks[copy], half, s)
    }

    /// Standard indices of the mod-`t` representatives (`s = 0`).
    pub fn reps(&self, dec: &Decomposition) -> Vec<usize> {
        (0..2 * self.multiplicity()).map(|a| self.slot_index(dec, a, 0)).collect()
    }

    /// All standard indices belonging to this level.
    pub fn indices(&self, dec: &Decomposition) -> Vec<usize> {
        let mut out = Vec::new();
        for &b in &self.blocks {
            for half in 0..2 {
                for s in 0..self.length {
                    out.push(dec.std_index(b, half, s));
                }
            }
        }
        out
    }
}

/// Levels `l_1 > ... > l_s` of a decomposition.
pub fn levels(dec: &Decomposition) -> Vec<Level> {
    let mut out: Vec<Level> = Vec::new();
    for (b, &k) in dec.partition.iter().enumerate() {
        match out.last_mut() {
            Some(l) if l.length == k => l.blocks.push(b),
            _ => out.push(Level { length: k, blocks: vec![b] }),
        }
    }
    out
}
