//! Exhaustive orbit computation over finite fields, used as an oracle for the invariants.

use std::collections::HashSet;

use super::setting::{OrbitSetting, OrthSpace};
use crate::error::{Error, Result};
use crate::guard::{check_size, enum_limit};
use crate::ring::linalg::solve_linear;
use crate::ring::{Field, Matrix, Scalar, TPolyMatrix, Vector};

const DEFAULT_LIMIT: u128 = 1_000_000;

fn field_elements(f: Field) -> Result<Vec<Scalar>> {
    f.elements().ok_or_else(|| Error::InvalidInput("brute force needs a finite field".into()))
}

/// All vectors of `F_q^n` in lexicographic order.
pub fn all_vectors(f: Field, n: usize) -> Result<Vec<Vector>> {
    let elems = field_elements(f)?;
    let q = elems.len() as u128;
    check_size("vectors", q.pow(n as u32), enum_limit(DEFAULT_LIMIT))?;
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vector| elems.iter().map(move |e| [v.clone(), vec![e.clone()]].concat())).collect();
    }
    Ok(out)
}

/// `O(V)(F_q)` by row-by-row backtracking on `g G g^T = G`.
pub fn orthogonal_group_residue(v: &OrthSpace) -> Result<Vec<Matrix>> {
    let f = v.field();
    let n = v.dim();
    let vecs = all_vectors(f, n)?;
    let gram = v.gram();
    let limit = enum_limit(DEFAULT_LIMIT);
    let mut out = Vec::new();
    let mut rows: Vec<Vector> = Vec::with_capacity(n);
    fn go(
        v: &OrthSpace,
        vecs: &[Vector],
        gram: &Matrix,
        rows: &mut Vec<Vector>,
        out: &mut Vec<Matrix>,
        limit: u128,
    ) -> Result<()> {
        let i = rows.len();
        let n = gram.rows();
        if i == n {
            out.push(Matrix::from_rows(gram.field(), n, rows)?);
            return check_size("orthogonal group", out.len() as u128, limit);
        }
        for c in vecs {
            if v.pair(c, c) != gram[(i, i)] {
                continue;
            }
            if rows.iter().enumerate().all(|(j, r)| v.pair(r, c) == gram[(j, i)]) {
                rows.push(c.clone());
                go(v, vecs, gram, rows, out, limit)?;
                rows.pop();
            }
        }
        Ok(())
    }
    go(v, &vecs, gram, &mut rows, &mut out, limit)?;
    Ok(out)
}

/// `O(V)(F_q[t]/(t^k))`, lifting each residue solution through the layers `t^1, ..., t^{k-1}`.
pub fn orthogonal_group(v: &OrthSpace, k: usize) -> Result<Vec<TPolyMatrix>> {
    let f = v.field();
    let n = v.dim();
    let elems = field_elements(f)?;
    let limit = enum_limit(DEFAULT_LIMIT);
    let gram = v.gram();
    let var = |i: usize, j: usize| i * n + j;
    let mut partial: Vec<Vec<Matrix>> = orthogonal_group_residue(v)?.into_iter().map(|g| vec![g]).collect();
    for s in 1..k {
        let mut next = Vec::new();
        for layers in &partial {
            let g0 = &layers[0];
            let mut e = Matrix::zeros(f, n, n);
            for u in 1..s {
                e = e.add(&layers[u].mul(gram).mul(&layers[s - u].transpose()));
            }
            let g0g = g0.mul(gram);
            let gg0 = gram.mul(&g0.transpose());
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for i in 0..n {
                for j in i..n {
                    let mut row = vec![f.zero(); n * n];
                    for l in 0..n {
                        row[var(j, l)] += &g0g[(i, l)];
                        row[var(i, l)] += &gg0[(l, j)];
                    }
                    rows.push(row);
                    rhs.push(-&e[(i, j)]);
                }
            }
            let sol = solve_linear(&Matrix::from_rows(f, n * n, &rows)?, &rhs)?;
            let Some(p) = sol.particular() else {
                return Err(Error::InvalidInput(format!("layer {s} has no lift")));
            };
            let kernel = sol.kernel();
            check_size(
                "orthogonal group",
                (next.len() as u128 + 1) * (elems.len() as u128).pow(kernel.len() as u32),
                limit,
            )?;
            for coeffs in all_vectors(f, kernel.len())? {
                let mut x = p.clone();
                for (c, kv) in coeffs.iter().zip(kernel) {
                    x = crate::ring::matrix::vec_add(&x, &crate::ring::matrix::vec_scale(kv, c));
                }
                let mut l = layers.clone();
                l.push(Matrix::from_fn(f, n, n, |i, j| x[var(i, j)].clone()));
                next.push(l);
            }
        }
        partial = next;
    }
    Ok(partial.iter().map(|l| TPolyMatrix::from_coefficients(f, k, l)).collect())
}

/// All elements of `M_- ⊗ V` over `F_q`.
pub fn all_elements(setting: &OrbitSetting) -> Result<Vec<Matrix>> {
    let f = setting.field();
    let (d, n) = (setting.dim_minus(), setting.dim_v());
    Ok(all_vectors(f, d * n)?
        .into_iter()
        .map(|c| Matrix::from_fn(f, d, n, |i, j| c[i * n + j].clone()))
        .collect())
}

/// Exact orbit partition of `M_- ⊗ V` under `O(V)(F_q[t]/(t^K))`.
#[derive(Clone, Debug)]
pub struct BruteOrbits {
    pub group_order: usize,
    pub orbits: Vec<Vec<Matrix>>,
}

impl BruteOrbits {
    pub fn element_count(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }
}

/// Upper bound `2^n q^{k n(n-1)/2}` for `|O(V)(F_q[t]/(t^k))|`, used to refuse hopeless runs early.
fn group_order_bound(q: u128, n: usize, k: usize) -> u128 {
    let e = (k * n * n.saturating_sub(1) / 2) as u32;
    q.checked_pow(e).and_then(|x| x.checked_mul(1 << n.min(100))).unwrap_or(u128::MAX)
}

pub fn brute_force_orbits(setting: &OrbitSetting) -> Result<BruteOrbits> {
    let limit = enum_limit(DEFAULT_LIMIT);
    let q = setting.field().order().ok_or_else(|| Error::InvalidInput("brute force needs a finite field".into()))? as u128;
    let cells = (setting.dim_minus() * setting.dim_v()) as u32;
    check_size("elements of M_- ⊗ V", q.checked_pow(cells).unwrap_or(u128::MAX), limit)?;
    check_size("orthogonal group (a priori bound)", group_order_bound(q, setting.dim_v(), setting.precision()), limit)?;
    let group = orthogonal_group(setting.v(), setting.precision())?;
    let elements = all_elements(setting)?;
    let mut seen: HashSet<Matrix> = HashSet::with_capacity(elements.len());
    let mut orbits = Vec::new();
    for x in elements {
        if seen.contains(&x) {
            continue;
        }
        let mut orbit: Vec<Matrix> = group.iter().map(|g| setting.act(&x, g)).collect();
        orbit.sort_by_key(|m| m.to_string_rows());
        orbit.dedup();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    Ok(BruteOrbits { group_order: group.len(), orbits })
}
