use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::Matrix;
use crate::snt::SntModule;

/// An element of `Sp(M, t)`: `g T = T g` and `g G g^T = G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SntAutomorphism {
    matrix: Matrix,
}

impl SntAutomorphism {
    pub fn new(m: &SntModule, matrix: Matrix) -> Result<SntAutomorphism> {
        if !is_member(m, &matrix)? {
            return Err(Error::NotMember);
        }
        Ok(SntAutomorphism { matrix })
    }

    pub fn identity(m: &SntModule) -> SntAutomorphism {
        SntAutomorphism { matrix: Matrix::identity(m.field(), m.dim()) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn compose(&self, other: &SntAutomorphism) -> SntAutomorphism {
        SntAutomorphism { matrix: self.matrix.mul(&other.matrix) }
    }
}

pub fn is_member(m: &SntModule, g: &Matrix) -> Result<bool> {
    if g.rows() != m.dim() || g.cols() != m.dim() {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix for a {}-dimensional module", g.rows(), g.cols(), m.dim())));
    }
    if g.field() != m.field() {
        return Err(Error::FieldMismatch(g.field().to_string(), m.field().to_string()));
    }
    let t = m.t_action();
    Ok(g.mul(t) == t.mul(g) && g.mul(m.gram()).mul(&g.transpose()) == *m.gram())
}
