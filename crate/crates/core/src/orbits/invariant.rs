//! Normal form `x = Σ e_i ⊗ w_i` and the orbit invariant `(Im f_x, T(x))`.

use serde::Serialize;

use super::setting::{poly_from_coeffs, OrbitSetting, PolyVec};
use crate::error::{Error, Result};
use crate::ring::linalg::{rank, solve_linear, Subspace};
use crate::ring::{Matrix, TruncPoly, Vector};
use crate::snt::SntSubmodule;

/// `x = Σ_i e_i ⊗ w_i` with `e_i` the canonical quasi-basis of `W` and `w_i ∈ V[t]/(t^{k_i})`
/// (stored at precision `K` with zero coefficients from `t^{k_i}` on).
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub w: SntSubmodule,
    pub vectors: Vec<PolyVec>,
}

impl NormalForm {
    pub fn types(&self) -> &[usize] {
        self.w.types()
    }

    /// `Σ_{i,s} (t^s e_i)^T w_{i,s}`.
    pub fn reconstruct(&self, setting: &OrbitSetting) -> Matrix {
        let f = setting.field();
        let mut x = setting.zero();
        let basis = self.w.adapted_basis();
        let mut row = 0;
        for (i, &k) in self.types().iter().enumerate() {
            for s in 0..k {
                let ws: Vector = self.vectors[i].iter().map(|p| p.coeff(s).clone()).collect();
                x = x.add(&setting.tensor(&[(basis[row].clone(), ws)]));
                row += 1;
            }
        }
        debug_assert_eq!(x.field(), f);
        x
    }

    /// Whether the constant terms of the `w_i` are linearly independent.
    pub fn is_primitive(&self) -> bool {
        let Some(first) = self.vectors.first() else {
            return true;
        };
        let f = first[0].field();
        let rows: Vec<Vector> = self.vectors.iter().map(|w| w.iter().map(|p| p.coeff(0).clone()).collect()).collect();
        rank(&Matrix::from_rows(f, first.len(), &rows).unwrap()) == rows.len()
    }
}

pub fn normal_form(setting: &OrbitSetting, x: &Matrix) -> Result<NormalForm> {
    let w = setting.image_of(x);
    normal_form_in(setting, x, &w)
}

/// Normal form relative to a given `W ⊇ Im f_x`.
pub fn normal_form_in(setting: &OrbitSetting, x: &Matrix, w: &SntSubmodule) -> Result<NormalForm> {
    setting.check_shape(x)?;
    let f = setting.field();
    let k = setting.precision();
    let basis = w.adapted_basis();
    let mut vectors = Vec::with_capacity(w.rank());
    if basis.is_empty() {
        if !x.is_zero() {
            return Err(Error::InvalidInput("W does not contain Im f_x".into()));
        }
        return Ok(NormalForm { w: w.clone(), vectors });
    }
    let et = Matrix::from_rows(f, setting.dim_minus(), &basis)?.transpose();
    // Column b of X = Σ_{i,s} w_{i,s}[b] (t^s e_i)^T
    let mut coeff_rows = vec![vec![f.zero(); setting.dim_v()]; basis.len()];
    for b in 0..setting.dim_v() {
        let sol = solve_linear(&et, &x.col_vec(b))?;
        let c = sol.particular().ok_or_else(|| Error::InvalidInput("W does not contain Im f_x".into()))?;
        for (r, cr) in c.iter().enumerate() {
            coeff_rows[r][b] = cr.clone();
        }
    }
    let mut row = 0;
    for &ki in w.types() {
        vectors.push(poly_from_coeffs(f, &coeff_rows[row..row + ki], k));
        row += ki;
    }
    Ok(NormalForm { w: w.clone(), vectors })
}

/// Index of the `e_{ij}` coordinate (`i <= j`) in the lexicographic order.
pub fn sym_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < m);
    // rows 0..i contribute m, m-1, ..., m-i+1 entries
    i * m - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Pairs `(i, j)`, `i <= j`, in coordinate order.
pub fn sym_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect()
}

/// `dim_F S_t^2(W) = Σ_{i <= j} min(k_i, k_j)`.
pub fn sym_dim(types: &[usize]) -> usize {
    sym_pairs(types.len()).iter().map(|&(i, j)| types[i].min(types[j])).sum()
}

/// Coordinates of `Σ_{i,j} c_ij e_i ⊗ e_j` on the quasi-basis `e_{ij} = e_i ⊗ e_j + e_j ⊗ e_i`:
/// `c_ij` for `i < j` and `c_ii / 2` on the diagonal, reduced mod `t^{min(k_i, k_j)}`.
pub fn sym_coordinates(c: &crate::ring::TPolyMatrix, types: &[usize]) -> Vec<TruncPoly> {
    let f = c.field();
    let half = f.from_ratio(1, 2).expect("characteristic is not 2");
    sym_pairs(types.len())
        .into_iter()
        .map(|(i, j)| {
            let x = c.get(i, j).truncate(types[i].min(types[j]));
            if i == j {
                x.scale(&half)
            } else {
                x
            }
        })
        .collect()
}

/// `T_W(x)` in the `e_{ij}` coordinates for `W ⊇ Im f_x`.
pub fn t_sym(setting: &OrbitSetting, x: &Matrix, w: &SntSubmodule) -> Result<Vec<TruncPoly>> {
    let nf = normal_form_in(setting, x, w)?;
    Ok(sym_coordinates(&setting.v().gram_poly(&nf.vectors), w.types()))
}

/// The complete orbit invariant: `Im f_x` as a subspace of `M_-` and `T(x)` in its canonical quasi-basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitInvariant {
    pub w: Subspace,
    pub types: Vec<usize>,
    pub quasi_basis: Vec<Vector>,
    pub coordinates: Vec<TruncPoly>,
}

impl OrbitInvariant {
    pub fn coordinate_strings(&self) -> Vec<String> {
        self.coordinates.iter().map(|c| c.to_string()).collect()
    }
}

pub fn orbit_invariant(setting: &OrbitSetting, x: &Matrix) -> Result<OrbitInvariant> {
    let w = setting.image_of(x);
    let coordinates = t_sym(setting, x, &w)?;
    Ok(OrbitInvariant {
        w: w.space().clone(),
        types: w.types().to_vec(),
        quasi_basis: w.quasi_basis().to_vec(),
        coordinates,
    })
}

pub fn same_orbit(setting: &OrbitSetting, x: &Matrix, y: &Matrix) -> Result<bool> {
    Ok(orbit_invariant(setting, x)? == orbit_invariant(setting, y)?)
}
