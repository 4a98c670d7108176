//! Exhaustive enumeration of `Gr(M, t)` over a prime field.

use super::module::SntModule;
use crate::error::{Error, Result};
use crate::guard::{check_size, enum_limit};
use crate::ring::linalg::Subspace;
use crate::ring::matrix::Vector;
use crate::ring::Field;

const DEFAULT_LIMIT: u128 = 10_000_000;

/// Every t-stable Lagrangian of `M`, sorted canonically. Requires a finite field and `q^dim <= 10^7`
/// (or the `SNT_MAX_ENUM` override).
pub fn enumerate_t_lagrangians(m: &SntModule) -> Result<Vec<Subspace>> {
    let Field::Prime(p) = m.field() else {
        return Err(Error::InvalidInput("enumeration needs a finite field".into()));
    };
    let n = m.dim();
    check_size("q^dim for t-Lagrangian enumeration", (p as u128).saturating_pow(n as u32), enum_limit(DEFAULT_LIMIT))?;
    let h = n / 2;
    let g = to_u64(m.gram(), p);
    let t = to_u64(m.t_action(), p);
    let mut out = Vec::new();
    for pivots in combinations(n, h) {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(h);
        fill(&pivots, 0, n, p, &g, &t, &mut rows, &mut out);
    }
    let f = m.field();
    let mut spaces: Vec<Subspace> = out
        .into_iter()
        .map(|rows| {
            let vecs: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x as i64)).collect()).collect();
            Subspace::span(f, n, &vecs)
        })
        .collect();
    spaces.sort();
    Ok(spaces)
}

fn to_u64(a: &crate::ring::Matrix, p: u64) -> Vec<Vec<u64>> {
    (0..a.rows()).map(|i| a.row(i).iter().map(|x| x.residue().expect("prime field") % p).collect()).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn pair(g: &[Vec<u64>], a: &[u64], b: &[u64], p: u64) -> u64 {
    let mut s = 0u64;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 && g[i][j] != 0 {
                s = (s + ai * g[i][j] % p * bj) % p;
            }
        }
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn fill(
    pivots: &[usize],
    r: usize,
    n: usize,
    p: u64,
    g: &[Vec<u64>],
    t: &[Vec<u64>],
    rows: &mut Vec<Vec<u64>>,
    out: &mut Vec<Vec<Vec<u64>>>,
) {
    if r == pivots.len() {
        if is_stable(rows, pivots, t, p) {
            out.push(rows.clone());
        }
        return;
    }
    let pr = pivots[r];
    let free: Vec<usize> = (pr + 1..n).filter(|c| !pivots.contains(c)).collect();
    let total = (p as usize).pow(free.len() as u32);
    for code in 0..total {
        let mut row = vec![0u64; n];
        row[pr] = 1;
        let mut c = code;
        for &j in &free {
            row[j] = (c % p as usize) as u64;
            c /= p as usize;
        }
        if rows.iter().any(|prev| pair(g, prev, &row, p) != 0) {
            continue;
        }
        rows.push(row);
        fill(pivots, r + 1, n, p, g, t, rows, out);
        rows.pop();
    }
}

fn is_stable(rows: &[Vec<u64>], pivots: &[usize], t: &[Vec<u64>], p: u64) -> bool {
    let n = t.len();
    rows.iter().all(|row| {
        let mut img = vec![0u64; n];
        for (i, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..n {
                img[j] = (img[j] + x * t[i][j]) % p;
            }
        }
        // In reduced echelon form, v is in the span iff v = Σ v[pivot_i] row_i.
        let mut rec = vec![0u64; n];
        for (row_i, &pc) in rows.iter().zip(pivots) {
            let c = img[pc];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                rec[j] = (rec[j] + c * row_i[j]) % p;
            }
        }
        rec == img
    })
}
