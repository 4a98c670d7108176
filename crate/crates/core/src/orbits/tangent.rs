//! The differential of `T_W` at `x` and the submersion criterion.

use serde::Serialize;

use super::invariant::{normal_form_in, sym_coordinates, sym_dim};
use super::setting::{OrbitSetting, PolyVec};
use crate::error::Result;
use crate::ring::linalg::rank;
use crate::ring::{Matrix, TPolyMatrix, TruncPoly};
use crate::snt::SntSubmodule;

/// Matrix of `dT_x : W ⊗ V → S_t^2(W)` over `F`.
///
/// Row `(i, s, b)` (in that nesting order) is the image of `t^s e_i ⊗ v_b`; columns list, for each
/// `i <= j`, the coefficients of `t^0, ..., t^{min(k_i, k_j) - 1}`.
#[derive(Clone, Debug, Serialize)]
pub struct TangentMap {
    pub matrix: Matrix,
    pub types: Vec<usize>,
}

impl TangentMap {
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn target_dim(&self) -> usize {
        sym_dim(&self.types)
    }
}

/// Flattens `S_t^2(W)` coordinates to an `F`-vector.
pub fn flatten_sym(coords: &[TruncPoly], types: &[usize]) -> Vec<crate::ring::Scalar> {
    let pairs = super::invariant::sym_pairs(types.len());
    let mut out = Vec::with_capacity(sym_dim(types));
    for (c, (i, j)) in coords.iter().zip(pairs) {
        for s in 0..types[i].min(types[j]) {
            out.push(c.coeff(s).clone());
        }
    }
    out
}

/// `dT_x(z) = Σ ((w_i, z_j) + (z_i, w_j)) e_i ⊗ e_j` for `z = Σ e_i ⊗ z_i`, in `e_{ij}` coordinates.
pub fn differential(setting: &OrbitSetting, w: &[PolyVec], z: &[PolyVec], types: &[usize]) -> Vec<TruncPoly> {
    let v = setting.v();
    let m = types.len();
    let k = setting.precision();
    let c = TPolyMatrix::from_fn(setting.field(), k, m, m, |i, j| v.pair_poly(&w[i], &z[j]).add(&v.pair_poly(&z[i], &w[j])));
    sym_coordinates(&c, types)
}

pub fn tangent_map(setting: &OrbitSetting, x: &Matrix, w: &SntSubmodule) -> Result<TangentMap> {
    let nf = normal_form_in(setting, x, w)?;
    let f = setting.field();
    let k = setting.precision();
    let types = w.types().to_vec();
    let m = types.len();
    let mut rows = Vec::new();
    for (i, &ki) in types.iter().enumerate() {
        for s in 0..ki {
            for b in 0..setting.dim_v() {
                let z: Vec<PolyVec> = (0..m)
                    .map(|j| {
                        (0..setting.dim_v())
                            .map(|c| if j == i && c == b { TruncPoly::t_pow(f, s, k) } else { TruncPoly::zero(f, k) })
                            .collect()
                    })
                    .collect();
                rows.push(flatten_sym(&differential(setting, &nf.vectors, &z, &types), &types));
            }
        }
    }
    let matrix = Matrix::from_rows(f, sym_dim(&types), &rows)?;
    Ok(TangentMap { matrix, types })
}

/// Both sides of the submersion criterion at `x` for `W ⊇ Im f_x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Submersion {
    pub rank: usize,
    pub target_dim: usize,
    pub image_is_w: bool,
}

impl Submersion {
    pub fn is_submersive(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn criteria_agree(&self) -> bool {
        self.is_submersive() == self.image_is_w
    }
}

pub fn submersion(setting: &OrbitSetting, x: &Matrix, w: &SntSubmodule) -> Result<Submersion> {
    let d = tangent_map(setting, x, w)?;
    Ok(Submersion {
        rank: d.rank(),
        target_dim: d.target_dim(),
        image_is_w: setting.image_of(x).space() == w.space(),
    })
}

pub fn is_submersive(setting: &OrbitSetting, x: &Matrix, w: &SntSubmodule) -> Result<bool> {
    Ok(submersion(setting, x, w)?.is_submersive())
}
