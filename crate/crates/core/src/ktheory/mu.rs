use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cofactor_matrix, determinant, IntMatrix};

/// Matrices of the maps induced by `φ_A` on `K_0(C(Tⁿ))` and `K_1(C(Tⁿ))`,
/// both identified with `Z^{2^{n-1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuPair {
    pub n: usize,
    pub mu0: IntMatrix,
    pub mu1: IntMatrix,
    pub conjugation_note: String,
}

pub fn compute_mu(a: &IntMatrix) -> Result<MuPair> {
    let n = a.rows();
    if !a.is_square() || !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let det = determinant(a)?;
    if det.is_zero() {
        return Err(Error::NotLocalHomeomorphism);
    }
    let (mu0, mu1) = match n {
        1 => (IntMatrix::identity(1), a.clone()),
        2 => (IntMatrix::diagonal([1.into(), det]), a.transpose()),
        _ => (
            IntMatrix::block_diag(&IntMatrix::identity(1), &cofactor_matrix(a)?.transpose()),
            IntMatrix::block_diag(&IntMatrix::diagonal([det]), &a.transpose()),
        ),
    };
    Ok(MuPair {
        n,
        mu0,
        mu1,
        conjugation_note: "sign matrix W = identity; other diagonal sign conjugates give the same groups".into(),
    })
}
