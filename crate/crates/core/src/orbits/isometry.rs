//! Extension of isometries between primitive tuples to elements of `O(V)(F[t]/(t^K))`, and transport
//! between elements of `M_- ⊗ V` with equal invariants.

use rand::Rng;

use super::invariant::{normal_form, orbit_invariant};
use super::setting::{poly_coeffs, OrbitSetting, OrthSpace, PolyVec};
use super::witt::{is_primitive_tuple, witt_lift};
use crate::error::{Error, Result};
use crate::ring::linalg::{inverse, left_kernel, solve_linear, Subspace};
use crate::ring::{Matrix, Scalar, TPolyMatrix, TruncPoly, Vector};
use crate::spgroup::sample::random_scalar;

/// Row-form reflection `x ↦ x - 2 (x, r) / (r, r) · r` over `F`.
pub fn reflection(v: &OrthSpace, r: &[Scalar]) -> Option<Matrix> {
    let f = v.field();
    let rr = v.pair(r, r).inv()?;
    let two = f.from_i64(2);
    let g = v.gram();
    let col = g.mul(&Matrix::from_rows(f, r.len(), &[r.to_vec()]).ok()?.transpose());
    let row = Matrix::from_rows(f, r.len(), &[r.to_vec()]).ok()?;
    Some(Matrix::identity(f, v.dim()).sub(&col.mul(&row).scale(&(&two * &rr))))
}

/// Reflection in a vector of `V[t]/(t^K)` whose norm is a unit.
pub fn reflection_poly(v: &OrthSpace, r: &PolyVec) -> Option<TPolyMatrix> {
    let f = v.field();
    let k = r[0].order();
    let inv = v.pair_poly(r, r).inv().ok()?.scale(&f.from_i64(2));
    let gr: PolyVec = (0..v.dim())
        .map(|i| (0..v.dim()).fold(TruncPoly::zero(f, k), |acc, j| acc.add(&r[j].scale(&v.gram()[(i, j)]))))
        .collect();
    let outer = TPolyMatrix::from_fn(f, k, v.dim(), v.dim(), |i, j| gr[i].mul(&r[j]).mul(&inv));
    Some(TPolyMatrix::identity(f, k, v.dim()).sub(&outer))
}

/// `C` with `C H C^T` diagonal and nonzero on the diagonal, for symmetric nondegenerate `H`.
fn diagonalize(h: &Matrix) -> Result<Matrix> {
    let f = h.field();
    let n = h.rows();
    let mut c = Matrix::identity(f, n);
    for p in 0..n {
        let cur = c.mul(h).mul(&c.transpose());
        if cur[(p, p)].is_zero() {
            if let Some(q) = (p + 1..n).find(|&q| !cur[(q, q)].is_zero()) {
                c.swap_rows(p, q);
            } else if let Some(q) = (p + 1..n).find(|&q| !cur[(p, q)].is_zero()) {
                let row = crate::ring::matrix::vec_add(&c.row_vec(p), &c.row_vec(q));
                c.set_row(p, &row);
            } else {
                return Err(Error::IsometryMismatch("degenerate extended Gram matrix".into()));
            }
        }
        let cur = c.mul(h).mul(&c.transpose());
        let piv = cur[(p, p)].inv().expect("nonzero pivot");
        let cp = c.row_vec(p);
        for q in p + 1..n {
            if cur[(q, p)].is_zero() {
                continue;
            }
            let factor = &cur[(q, p)] * &piv;
            let row = crate::ring::matrix::vec_sub(&c.row_vec(q), &crate::ring::matrix::vec_scale(&cp, &factor));
            c.set_row(q, &row);
        }
    }
    Ok(c)
}

/// Splits independent vectors into `[nondegenerate part | radical]` using only their Gram matrix,
/// then adds hyperbolic partners for the radical. Returns the extended tuple.
fn hyperbolic_completion(v: &OrthSpace, p: &Matrix, q_rad: usize, vecs: &Matrix) -> Result<Vec<Vector>> {
    let f = v.field();
    let base = p.mul(vecs);
    let m = base.rows();
    let np = m - q_rad;
    let mut out: Vec<Vector> = base.row_vectors();
    let mut partners: Vec<Vector> = Vec::new();
    for j in 0..q_rad {
        let mut rows: Vec<Vector> = Vec::new();
        let mut rhs: Vector = Vec::new();
        for (idx, x) in out.iter().enumerate() {
            rows.push(v.gram().apply(x));
            rhs.push(if idx == np + j { f.one() } else { f.zero() });
        }
        for z in &partners {
            rows.push(v.gram().apply(z));
            rhs.push(f.zero());
        }
        let sys = Matrix::from_rows(f, v.dim(), &rows)?;
        let z = solve_linear(&sys, &rhs)?
            .particular()
            .cloned()
            .ok_or_else(|| Error::IsometryMismatch("no hyperbolic partner".into()))?;
        let half_norm = &v.pair(&z, &z) * &f.from_ratio(1, 2)?;
        let z = crate::ring::matrix::vec_sub(&z, &crate::ring::matrix::vec_scale(&out[np + j], &half_norm));
        partners.push(z);
    }
    out.extend(partners);
    Ok(out)
}

/// Change of basis `P` (rows: complement of the radical, then the radical) for a Gram matrix.
fn radical_split(gram: &Matrix) -> (Matrix, usize) {
    let f = gram.field();
    let m = gram.rows();
    let rad = left_kernel(gram);
    let rad_space = Subspace::span(f, m, &rad);
    let comp = Subspace::full(f, m).complement_rows(&rad_space);
    let mut rows = comp;
    rows.extend(rad.iter().cloned());
    (Matrix::from_rows(f, m, &rows).expect("rectangular"), rad.len())
}

/// `g_0 ∈ O(V)(F)` with `a_i g_0 = b_i`, given independent tuples with equal Gram matrices.
pub fn witt_extend_residue(v: &OrthSpace, a: &[Vector], b: &[Vector]) -> Result<Matrix> {
    let f = v.field();
    let n = v.dim();
    if a.is_empty() {
        return Ok(Matrix::identity(f, n));
    }
    let am = Matrix::from_rows(f, n, a)?;
    let bm = Matrix::from_rows(f, n, b)?;
    let ga = am.mul(v.gram()).mul(&am.transpose());
    if ga != bm.mul(v.gram()).mul(&bm.transpose()) {
        return Err(Error::IsometryMismatch("Gram matrices differ at the residue field".into()));
    }
    let (p, q) = radical_split(&ga);
    let ea = hyperbolic_completion(v, &p, q, &am)?;
    let eb = hyperbolic_completion(v, &p, q, &bm)?;
    let ema = Matrix::from_rows(f, n, &ea)?;
    let emb = Matrix::from_rows(f, n, &eb)?;
    let h = ema.mul(v.gram()).mul(&ema.transpose());
    debug_assert_eq!(h, emb.mul(v.gram()).mul(&emb.transpose()));
    let c = diagonalize(&h)?;
    let xs = c.mul(&ema).row_vectors();
    let ys = c.mul(&emb).row_vectors();
    let mut g = Matrix::identity(f, n);
    for (x, y) in xs.iter().zip(&ys) {
        let xc = g.apply(x);
        if &xc == y {
            continue;
        }
        let diff = crate::ring::matrix::vec_sub(&xc, y);
        let step = match reflection(v, &diff) {
            Some(s) => s,
            None => {
                let sum = crate::ring::matrix::vec_add(&xc, y);
                let s1 = reflection(v, &sum).expect("(x+y, x+y) = 4 (x, x) is nonzero");
                s1.mul(&reflection(v, y).expect("y is anisotropic"))
            }
        };
        g = g.mul(&step);
    }
    debug_assert!(a.iter().zip(b).all(|(x, y)| &g.apply(x) == y));
    Ok(g)
}

/// `g ∈ O(V)(F[t]/(t^K))` with `a_i · g = b_i`, given primitive tuples with identical Gram matrices.
///
/// The residue isometry comes from [`witt_extend_residue`]; each higher coefficient `g_s` then solves
/// the linear system `g_0 G g_s^T + g_s G g_0^T = -E_s`, `a_{i,0} g_s = F_{i,s}`.
pub fn extend_isometry(v: &OrthSpace, a: &[PolyVec], b: &[PolyVec]) -> Result<TPolyMatrix> {
    let f = v.field();
    let n = v.dim();
    if a.len() != b.len() {
        return Err(Error::IsometryMismatch(format!("{} vs {} vectors", a.len(), b.len())));
    }
    let k = a.first().map_or(1, |x| x[0].order());
    if !is_primitive_tuple(a) || !is_primitive_tuple(b) {
        return Err(Error::IsometryMismatch("tuples must be primitive".into()));
    }
    if v.gram_poly(a) != v.gram_poly(b) {
        return Err(Error::IsometryMismatch("Gram matrices differ".into()));
    }
    let a0: Vec<Vector> = a.iter().map(|x| poly_coeffs(x, 0)).collect();
    let b0: Vec<Vector> = b.iter().map(|x| poly_coeffs(x, 0)).collect();
    let g0 = witt_extend_residue(v, &a0, &b0)?;
    let gram = v.gram();
    let mut layers = vec![g0.clone()];
    let var = |i: usize, j: usize| i * n + j;
    for s in 1..k {
        let mut e = Matrix::zeros(f, n, n);
        for u in 1..s {
            e = e.add(&layers[u].mul(gram).mul(&layers[s - u].transpose()));
        }
        let mut rows: Vec<Vector> = Vec::new();
        let mut rhs: Vector = Vec::new();
        // (g0 G X^T + X G g0^T)[i][j] = Σ_l (g0 G)[i][l] X[j][l] + X[i][l] (G g0^T)[l][j]
        let g0g = g0.mul(gram);
        let gg0 = gram.mul(&g0.transpose());
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
        for (ai, bi) in a.iter().zip(b) {
            let a0i = poly_coeffs(ai, 0);
            let mut target = poly_coeffs(bi, s);
            for u in 1..=s {
                let au = poly_coeffs(ai, u);
                target = crate::ring::matrix::vec_sub(&target, &layers[s - u].apply(&au));
            }
            for col in 0..n {
                let mut row = vec![f.zero(); n * n];
                for l in 0..n {
                    row[var(l, col)] = a0i[l].clone();
                }
                rows.push(row);
                rhs.push(target[col].clone());
            }
        }
        let sys = Matrix::from_rows(f, n * n, &rows)?;
        let sol = solve_linear(&sys, &rhs)?;
        let x = sol
            .particular()
            .ok_or_else(|| Error::IsometryMismatch(format!("layer {s} is inconsistent")))?;
        layers.push(Matrix::from_fn(f, n, n, |i, j| x[var(i, j)].clone()));
    }
    let g = TPolyMatrix::from_coefficients(f, k, &layers);
    debug_assert!(v.is_orthogonal(&g));
    Ok(g)
}

/// Random element of `O(V)(F[t]/(t^K))` as a product of reflections in vectors of unit norm.
pub fn random_orthogonal(v: &OrthSpace, k: usize, rng: &mut impl Rng) -> TPolyMatrix {
    let f = v.field();
    let n = v.dim();
    let mut g = TPolyMatrix::identity(f, k, n);
    let mut made = 0;
    let mut tries = 0;
    while made < 2 * n + 1 && tries < 200 {
        tries += 1;
        let r: PolyVec = (0..n)
            .map(|_| {
                let c: Vec<Scalar> = (0..k).map(|_| random_scalar(f, rng)).collect();
                TruncPoly::from_coeffs(f, &c, k)
            })
            .collect();
        if let Some(s) = reflection_poly(v, &r) {
            g = g.mul(&s);
            made += 1;
        }
    }
    g
}

/// Some `g` with `x · g = y`, or `None` when the invariants differ.
pub fn transport(setting: &OrbitSetting, x: &Matrix, y: &Matrix) -> Result<Option<TPolyMatrix>> {
    let ix = orbit_invariant(setting, x)?;
    if ix != orbit_invariant(setting, y)? {
        return Ok(None);
    }
    let nx = normal_form(setting, x)?;
    if nx.vectors.is_empty() {
        return Ok(Some(TPolyMatrix::identity(setting.field(), setting.precision(), setting.dim_v())));
    }
    let ny = normal_form(setting, y)?;
    let v = setting.v();
    let bt = witt_lift(v, &nx.vectors, &ny.vectors, nx.types())?;
    let g = extend_isometry(v, &nx.vectors, &bt)?;
    if setting.act(x, &g) != *y {
        return Err(Error::IsometryMismatch("transport does not reproduce y".into()));
    }
    Ok(Some(g))
}

/// Inverse of an orthogonal matrix: `g^{-1} = G g^T G^{-1}`.
pub fn orthogonal_inverse(v: &OrthSpace, g: &TPolyMatrix) -> TPolyMatrix {
    let k = g.precision();
    let gp = TPolyMatrix::from_constant(v.gram(), k);
    let gi = TPolyMatrix::from_constant(&inverse(v.gram()).expect("nondegenerate"), k);
    gp.mul(&g.transpose()).mul(&gi)
}
