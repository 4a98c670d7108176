//! The quadratic space `V`, the ambient data `(M, M_-, V, K)`, and the action of `O(V)(F[t]/(t^K))`
//! on `M_- ⊗ V`.

use crate::error::{Error, Result};
use crate::ring::linalg::{determinant, Subspace};
use crate::ring::{Field, Matrix, Scalar, TPolyMatrix, TruncPoly, Vector};
use crate::snt::{decompose, LagrangianFlag, SntModule, SntSubmodule};

/// A vector of `V[t]/(t^K)`.
pub type PolyVec = Vec<TruncPoly>;

/// A nondegenerate symmetric bilinear space over `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthSpace {
    gram: Matrix,
}

impl OrthSpace {
    pub fn new(gram: Matrix) -> Result<OrthSpace> {
        if !gram.is_square() || gram.rows() == 0 {
            return Err(Error::InvalidOrthSpace("gram must be square and nonempty".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidOrthSpace("gram is not symmetric".into()));
        }
        if determinant(&gram).is_zero() {
            return Err(Error::InvalidOrthSpace("gram is degenerate".into()));
        }
        Ok(OrthSpace { gram })
    }

    pub fn diagonal(field: Field, entries: &[i64]) -> Result<OrthSpace> {
        let n = entries.len();
        OrthSpace::new(Matrix::from_fn(field, n, n, |i, j| if i == j { field.from_i64(entries[i]) } else { field.zero() }))
    }

    pub fn hyperbolic(field: Field) -> OrthSpace {
        OrthSpace { gram: Matrix::from_i64(field, &[&[0, 1], &[1, 0]]) }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn pair(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        self.gram.bilinear(a, b)
    }

    /// `(a, b)` extended `F[t]`-bilinearly.
    pub fn pair_poly(&self, a: &[TruncPoly], b: &[TruncPoly]) -> TruncPoly {
        let k = a[0].order();
        let mut acc = TruncPoly::zero(self.field(), k);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let g = &self.gram[(i, j)];
                if g.is_zero() || bj.is_zero() {
                    continue;
                }
                acc = acc.add(&ai.mul(bj).scale(g));
            }
        }
        acc
    }

    pub fn gram_poly(&self, vs: &[PolyVec]) -> TPolyMatrix {
        let k = vs.first().map_or(1, |v| v[0].order());
        TPolyMatrix::from_fn(self.field(), k, vs.len(), vs.len(), |i, j| self.pair_poly(&vs[i], &vs[j]))
    }

    /// Whether `g` preserves the form over `F[t]/(t^K)`.
    pub fn is_orthogonal(&self, g: &TPolyMatrix) -> bool {
        let gp = TPolyMatrix::from_constant(&self.gram, g.precision());
        g.mul(&gp).mul(&g.transpose()) == gp
    }
}

/// Coefficients `v_0, ..., v_{K-1}` of a polynomial vector.
pub fn poly_coeffs(v: &[TruncPoly], s: usize) -> Vector {
    v.iter().map(|x| x.coeff(s).clone()).collect()
}

pub fn poly_from_coeffs(field: Field, coeffs: &[Vector], k: usize) -> PolyVec {
    let n = coeffs.first().map_or(0, |c| c.len());
    (0..n)
        .map(|b| {
            let c: Vec<Scalar> = coeffs.iter().map(|v| v[b].clone()).collect();
            TruncPoly::from_coeffs(field, &c, k)
        })
        .collect()
}

pub fn poly_apply(v: &[TruncPoly], g: &TPolyMatrix) -> PolyVec {
    let k = g.precision();
    (0..g.cols())
        .map(|j| v.iter().enumerate().fold(TruncPoly::zero(g.field(), k), |acc, (i, x)| acc.add(&x.mul(g.get(i, j)))))
        .collect()
}

/// Everything needed to talk about `x ∈ M_- ⊗ V`: the flag, the quadratic space and the precision `K`.
///
/// Elements are coordinate matrices `X` with rows indexed by the flag's basis of `M_-` and columns by `V`.
#[derive(Clone, Debug)]
pub struct OrbitSetting {
    module: SntModule,
    flag: LagrangianFlag,
    v: OrthSpace,
    k: usize,
}

impl OrbitSetting {
    pub fn new(module: SntModule, flag: LagrangianFlag, v: OrthSpace) -> Result<OrbitSetting> {
        if module.field() != v.field() {
            return Err(Error::FieldMismatch(module.field().to_string(), v.field().to_string()));
        }
        let k = module.nilpotency_index().max(1);
        Ok(OrbitSetting { module, flag, v, k })
    }

    /// The standard flag of `M`.
    pub fn standard(module: SntModule, v: OrthSpace) -> Result<OrbitSetting> {
        let flag = LagrangianFlag::standard(&module, &decompose(&module)?)?;
        OrbitSetting::new(module, flag, v)
    }

    pub fn module(&self) -> &SntModule {
        &self.module
    }

    pub fn flag(&self) -> &LagrangianFlag {
        &self.flag
    }

    pub fn v(&self) -> &OrthSpace {
        &self.v
    }

    pub fn field(&self) -> Field {
        self.v.field()
    }

    /// Working precision `K`: `t^K` kills `M`.
    pub fn precision(&self) -> usize {
        self.k
    }

    pub fn dim_minus(&self) -> usize {
        self.flag.half_dim()
    }

    pub fn dim_v(&self) -> usize {
        self.v.dim()
    }

    pub fn minus_t(&self) -> &Matrix {
        self.flag.minus_t_action()
    }

    pub fn zero(&self) -> Matrix {
        Matrix::zeros(self.field(), self.dim_minus(), self.dim_v())
    }

    pub fn check_shape(&self, x: &Matrix) -> Result<()> {
        if x.rows() != self.dim_minus() || x.cols() != self.dim_v() {
            return Err(Error::DimensionMismatch(format!(
                "element is {}x{}, expected {}x{}",
                x.rows(),
                x.cols(),
                self.dim_minus(),
                self.dim_v()
            )));
        }
        Ok(())
    }

    /// `x · g = Σ_s (T_-^s)^T X g_s`.
    pub fn act(&self, x: &Matrix, g: &TPolyMatrix) -> Matrix {
        let mut out = self.zero();
        let mut tp = Matrix::identity(self.field(), self.dim_minus());
        for s in 0..g.precision() {
            let gs = g.coefficient(s);
            if !gs.is_zero() {
                out = out.add(&tp.transpose().mul(x).mul(&gs));
            }
            tp = tp.mul(self.minus_t());
            if tp.is_zero() {
                break;
            }
        }
        out
    }

    /// `x = Σ u ⊗ v` for pairs of coordinate vectors.
    pub fn tensor(&self, terms: &[(Vector, Vector)]) -> Matrix {
        let f = self.field();
        let mut x = self.zero();
        for (u, v) in terms {
            let col = Matrix::from_rows(f, u.len(), std::slice::from_ref(u)).unwrap().transpose();
            let row = Matrix::from_rows(f, v.len(), std::slice::from_ref(v)).unwrap();
            x = x.add(&col.mul(&row));
        }
        x
    }

    /// Matrix of `f_x` on the constant vectors of `V`: row `b` is `f_x(v_b) = Σ_i (v_i, v_b) u_i`.
    /// On `V[t]` it extends `t`-linearly.
    pub fn f_of(&self, x: &Matrix) -> Matrix {
        self.v.gram().mul(&x.transpose())
    }

    /// `f_x(Σ_s t^s v_s) = Σ_s f_x(v_s) T_-^s`.
    pub fn f_apply(&self, x: &Matrix, v: &[TruncPoly]) -> Vector {
        let fx = self.f_of(x);
        let mut out = vec![self.field().zero(); self.dim_minus()];
        let mut tp = Matrix::identity(self.field(), self.dim_minus());
        for s in 0..self.k {
            let img = fx.mul(&tp).apply(&poly_coeffs(v, s));
            out = crate::ring::matrix::vec_add(&out, &img);
            tp = tp.mul(self.minus_t());
        }
        out
    }

    /// `Im f_x`: the t-stable span of the columns of `X`.
    pub fn image_of(&self, x: &Matrix) -> SntSubmodule {
        let f = self.field();
        let d = self.dim_minus();
        let mut gens = Vec::new();
        for b in 0..x.cols() {
            let mut cur = x.col_vec(b);
            while cur.iter().any(|c| !c.is_zero()) {
                gens.push(cur.clone());
                cur = self.minus_t().apply(&cur);
            }
        }
        SntSubmodule::new(self.minus_t(), Subspace::span(f, d, &gens)).expect("t-closure is stable")
    }

    /// A t-stable subspace of `M_-` as a submodule under the flag's t-action.
    pub fn submodule(&self, space: Subspace) -> Result<SntSubmodule> {
        SntSubmodule::new(self.minus_t(), space)
    }
}
