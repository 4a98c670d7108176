//! The Lie algebra `sp(M, t) = {S : S T = T S, S G + G S^T = 0}`.

use crate::ring::linalg::kernel;
use crate::ring::{Matrix, Vector};
use crate::snt::SntModule;

pub fn lie_algebra_basis(m: &SntModule) -> Vec<Matrix> {
    let n = m.dim();
    let f = m.field();
    let t = m.t_action();
    let g = m.gram();
    let var = |i: usize, j: usize| i * n + j;
    let mut eqs: Vec<Vector> = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            // (S T - T S)[i][j]
            let mut e = vec![f.zero(); n * n];
            for l in 0..n {
                e[var(i, l)] += &t[(l, j)];
                e[var(l, j)] -= &t[(i, l)];
            }
            eqs.push(e);
            // (S G + G S^T)[i][j] = Σ_l S[i][l] G[l][j] + G[i][l] S[j][l]
            let mut e = vec![f.zero(); n * n];
            for l in 0..n {
                e[var(i, l)] += &g[(l, j)];
                e[var(j, l)] += &g[(i, l)];
            }
            eqs.push(e);
        }
    }
    let sys = Matrix::from_rows(f, n * n, &eqs).expect("square system");
    kernel(&sys).into_iter().map(|v| Matrix::from_fn(f, n, n, |i, j| v[var(i, j)].clone())).collect()
}

pub fn is_lie_element(m: &SntModule, s: &Matrix) -> bool {
    let t = m.t_action();
    let g = m.gram();
    s.mul(t) == t.mul(s) && s.mul(g).add(&g.mul(&s.transpose())).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Field;

    #[test]
    fn classical_dimensions() {
        let f = Field::Rational;
        assert_eq!(lie_algebra_basis(&SntModule::standard_plane(f, 1).unwrap()).len(), 3);
        let h2 = SntModule::standard_plane(f, 2).unwrap();
        let b = lie_algebra_basis(&h2);
        assert_eq!(b.len(), 6);
        assert!(b.iter().all(|s| is_lie_element(&h2, s)));
        assert_eq!(lie_algebra_basis(&SntModule::standard(f, &[1, 1]).unwrap()).len(), 10);
    }
}
