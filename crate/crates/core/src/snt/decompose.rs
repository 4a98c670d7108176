//! Splitting an snt-module into standard planes.

use serde::Serialize;

use super::module::SntModule;
use crate::error::{Error, Result};
use crate::ring::linalg::{inverse, solve_linear, Subspace};
use crate::ring::matrix::{Matrix, Vector};

/// An isomorphism `M ≅ H_{k_1} ⊕ ... ⊕ H_{k_n}` with `k_1 >= ... >= k_n`.
///
/// Row `r` of `from_standard` is the image in `M` of the `r`-th standard basis vector,
/// so standard coordinates `y` map to `y * from_standard`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub partition: Vec<usize>,
    pub from_standard: Matrix,
    pub to_standard: Matrix,
}

impl Decomposition {
    pub fn standard_module(&self) -> SntModule {
        SntModule::standard(self.from_standard.field(), &self.partition).expect("nonempty partition")
    }

    /// Offset of block `b` in standard coordinates.
    pub fn block_offset(&self, b: usize) -> usize {
        self.partition[..b].iter().map(|k| 2 * k).sum()
    }

    /// Standard index of `t^s e_1` (half = 0) or `t^s e_2` (half = 1) in block `b`.
    pub fn std_index(&self, b: usize, half: usize, s: usize) -> usize {
        self.block_offset(b) + half * self.partition[b] + s
    }
}

/// Constructive structure theorem: repeatedly split off `span{t^j ξ} ⊕ span{t^j η}`
/// for `ξ` of maximal order and `η` dual to the chain of `ξ`, then recurse on the orthogonal.
pub fn decompose(m: &SntModule) -> Result<Decomposition> {
    let violations = m.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidModule(violations));
    }
    let field = m.field();
    let n = m.dim();
    let mut rest = Subspace::full(field, n);
    let mut partition = Vec::new();
    let mut rows: Vec<Vector> = Vec::with_capacity(n);
    while rest.dim() > 0 {
        let basis = rest.basis_vectors();
        // The maximal order on a subspace is attained on one of its basis vectors.
        let (xi, order) = basis
            .iter()
            .map(|b| (b, m.element_order(b)))
            .fold((None, 0), |(best, bo), (b, o)| if o > bo { (Some(b), o) } else { (best, bo) });
        let xi = xi.expect("nonzero subspace").clone();
        let chain = power_chain(m, &xi, order);

        let pairing = Matrix::from_fn(field, order, basis.len(), |j, l| m.pair(&chain[j], &basis[l]));
        let mut rhs = vec![field.zero(); order];
        rhs[order - 1] = field.one();
        let sol = solve_linear(&pairing, &rhs)?;
        let coeffs = sol.particular().ok_or_else(|| Error::InvalidInput("no dual vector for a maximal chain".into()))?;
        let eta = Matrix::from_rows(field, basis.len(), std::slice::from_ref(coeffs))?
            .mul(&Matrix::from_rows(field, n, &basis)?)
            .row_vec(0);
        let eta_chain = power_chain(m, &eta, order);
        // span{t^j η} is isotropic for free: <η, η t^k> = 0 in any snt-module.
        debug_assert!(m.is_isotropic(&eta_chain));

        let mut block = chain;
        block.extend(eta_chain);
        let block_space = m.span(&block);
        rest = rest.intersection(&block_space.perp(m.gram()));
        rows.extend(block);
        partition.push(order);
    }
    let q = Matrix::from_rows(field, n, &rows)?;
    let std = SntModule::standard(field, &partition)?;
    if q.mul(m.gram()).mul(&q.transpose()) != *std.gram() || std.t_action().mul(&q) != q.mul(m.t_action()) {
        return Err(Error::InvalidInput("decomposition failed to transport the module structure".into()));
    }
    let to_standard = inverse(&q)?;
    Ok(Decomposition { partition, from_standard: q, to_standard })
}

fn power_chain(m: &SntModule, v: &[crate::ring::Scalar], len: usize) -> Vec<Vector> {
    let mut out = Vec::with_capacity(len);
    let mut cur = v.to_vec();
    for _ in 0..len {
        out.push(cur.clone());
        cur = m.apply_t(&cur);
    }
    out
}
