//! The fibration `U ↦ π_-(U)` over t-stable subspaces of `M_-`, and its fibres.
//!
//! For a t-Lagrangian `U` with `W = π_-(U)`, the map `ρ_U : W → M_+/W^⊥` sends `w` to the class
//! of any `m ∈ M_+` with `w + m ∈ U`. It is stored through the matrix
//! `β(a, b) = <w_a, ρ(w_b)>` on the echelon basis of `W`, which determines `ρ` modulo `W^⊥`.

use serde::Serialize;

use super::lagrangian::{is_t_lagrangian_space, LagrangianFlag};
use super::module::SntModule;
use super::submodule::SntSubmodule;
use crate::error::{Error, Result};
use crate::ring::linalg::{kernel, solve_linear, Subspace};
use crate::ring::matrix::{Matrix, Vector};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhoData {
    /// `π_-(U)`, in `M_-` coordinates.
    pub w: SntSubmodule,
    /// `M_+ ∩ U`, in `M` coordinates.
    pub w_perp: Subspace,
    /// For each echelon basis vector of `W`, a representative of its image in `M_+` (as a vector of `M`).
    pub images: Vec<Vector>,
    pub beta: Matrix,
}

impl RhoData {
    pub fn is_self_dual(&self) -> bool {
        self.beta.is_symmetric()
    }

    pub fn is_t_linear(&self) -> bool {
        is_t_compatible(&self.w.restricted_t(), &self.beta)
    }
}

fn is_t_compatible(tw: &Matrix, beta: &Matrix) -> bool {
    beta.mul(&tw.transpose()) == tw.mul(beta)
}

pub fn rho_of(m: &SntModule, flag: &LagrangianFlag, u: &Subspace) -> Result<RhoData> {
    if !is_t_lagrangian_space(m, u) {
        return Err(Error::NotLagrangian);
    }
    let field = m.field();
    let h = flag.half_dim();
    let ub = u.basis_vectors();
    let minus_parts: Vec<Vector> = ub.iter().map(|v| flag.split(v).0).collect();
    let w = SntSubmodule::new(flag.minus_t_action(), Subspace::span(field, h, &minus_parts))?;
    let w_perp = u.intersection(&flag.plus_space());

    // Express each echelon vector of W as π_- of a combination of U's basis.
    let proj = Matrix::from_rows(field, h, &minus_parts)?.transpose();
    let mut images = Vec::with_capacity(w.dim());
    for wa in w.space().basis_vectors() {
        let sol = solve_linear(&proj, &wa)?;
        let c = sol.particular().expect("w lies in the projection");
        let lift: Vector = Matrix::from_rows(field, m.dim(), &ub)?.apply(c);
        images.push(flag.from_plus(&flag.split(&lift).1));
    }
    let w_vecs: Vec<Vector> = w.space().basis_vectors().iter().map(|c| flag.from_minus(c)).collect();
    let beta = Matrix::from_fn(field, w.dim(), w.dim(), |a, b| m.pair(&w_vecs[a], &images[b]));
    let data = RhoData { w, w_perp, images, beta };
    debug_assert!(data.is_self_dual() && data.is_t_linear());
    Ok(data)
}

/// The t-Lagrangian `{w + ρ(w)} + W^⊥` attached to `W` (in `M_-` coordinates) and a self-dual `β`.
pub fn graph(m: &SntModule, flag: &LagrangianFlag, w: &SntSubmodule, beta: &Matrix) -> Result<Subspace> {
    let field = m.field();
    let d = w.dim();
    if beta.rows() != d || beta.cols() != d {
        return Err(Error::DimensionMismatch(format!("beta must be {d}x{d}")));
    }
    if !beta.is_symmetric() {
        return Err(Error::InvalidInput("beta is not self-dual".into()));
    }
    if !is_t_compatible(&w.restricted_t(), beta) {
        return Err(Error::InvalidInput("beta is not t-linear".into()));
    }
    let w_vecs: Vec<Vector> = w.space().basis_vectors().iter().map(|c| flag.from_minus(c)).collect();
    let plus = flag.plus_basis().row_vectors();
    let pairing = Matrix::from_fn(field, d, plus.len(), |a, l| m.pair(&w_vecs[a], &plus[l]));
    let mut gens = Vec::new();
    for b in 0..d {
        let sol = solve_linear(&pairing, &beta.col_vec(b))?;
        let c = sol.particular().expect("pairing M_- x M_+ is perfect");
        let r = flag.from_plus(c);
        gens.push(w_vecs[b].iter().zip(&r).map(|(x, y)| x + y).collect());
    }
    for c in kernel(&pairing) {
        gens.push(flag.from_plus(&c));
    }
    Ok(m.span(&gens))
}

/// Basis of `F_W`: symmetric `β` on `W` with `β T_W^T = T_W β`.
pub fn fw_basis(w: &SntSubmodule) -> Vec<Matrix> {
    let tw = w.restricted_t();
    let d = w.dim();
    let f = tw.field();
    if d == 0 {
        return vec![];
    }
    let idx = |i: usize, j: usize| i * d + j;
    let mut eqs: Vec<Vector> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i < j {
                let mut e = vec![f.zero(); d * d];
                e[idx(i, j)] = f.one();
                e[idx(j, i)] = f.from_i64(-1);
                eqs.push(e);
            }
            // (β T^T - T β)[i][j] = Σ_l β[i][l] T[j][l] - T[i][l] β[l][j]
            let mut e = vec![f.zero(); d * d];
            for l in 0..d {
                e[idx(i, l)] += &tw[(j, l)];
                e[idx(l, j)] -= &tw[(i, l)];
            }
            eqs.push(e);
        }
    }
    let sys = Matrix::from_rows(f, d * d, &eqs).expect("square system");
    kernel(&sys).into_iter().map(|v| Matrix::from_fn(f, d, d, |i, j| v[idx(i, j)].clone())).collect()
}

pub fn fw_dimension(w: &SntSubmodule) -> usize {
    fw_basis(w).len()
}
