//! K-groups read off the six-term exact sequence:
//! `K0 = coker(1 - D·μ0⁻¹) ⊕ ker(1 - D·μ1⁻¹)` and
//! `K1 = coker(1 - D·μ1⁻¹) ⊕ ker(1 - D·μ0⁻¹)`, with `D = |det A|`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{assemble, compute_mu, KGroups, Piece};
use crate::error::{Error, Result};
use crate::linalg::{adjugate, determinant, IntMatrix};

/// `D · μ⁻¹`, computed as `D · adj(μ) / det(μ)` with an exactness check.
pub(crate) fn scaled_inverse(mu: &IntMatrix, d: &BigInt) -> Result<IntMatrix> {
    let det = determinant(mu)?;
    if det.is_zero() {
        return Err(Error::Singular("μ is singular".into()));
    }
    let scaled = adjugate(mu)?.scale(d);
    let mut out = IntMatrix::zeros(mu.rows(), mu.cols());
    for i in 0..mu.rows() {
        for j in 0..mu.cols() {
            let (q, r) = scaled[(i, j)].div_rem(&det);
            if !r.is_zero() {
                return Err(Error::Internal("D·μ⁻¹ is not integral".into()));
            }
            out[(i, j)] = q;
        }
    }
    Ok(out)
}

/// K-groups from the generic sequence; the unit is the first generator of
/// `coker(1 - D·μ0⁻¹)`.
pub fn generic_k_groups(a: &IntMatrix) -> Result<KGroups> {
    let mu = compute_mu(a)?;
    let d = determinant(a)?.abs();
    let m0 = scaled_inverse(&mu.mu0, &d)?.one_minus();
    let m1 = scaled_inverse(&mu.mu1, &d)?.one_minus();
    let mut unit = vec![0i64; m0.rows()];
    unit[0] = 1;
    let k0 = [Piece::coker("coker(1 - D·μ0⁻¹)", m0.clone()), Piece::kernel("ker(1 - D·μ1⁻¹)", &m1)];
    let k1 = [Piece::coker("coker(1 - D·μ1⁻¹)", m1), Piece::kernel("ker(1 - D·μ0⁻¹)", &m0)];
    assemble(&k0, &k1, 0, &unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FgAbelianGroup;

    #[test]
    fn circle_cases() {
        let k = |a: i64| generic_k_groups(&IntMatrix::from_i64(&[&[a]])).unwrap();
        let g = k(3);
        assert_eq!(g.k0.total, FgAbelianGroup::from_cyclic([0, 2]));
        assert_eq!(g.k1.total, FgAbelianGroup::free(1));
        let g = k(-1);
        assert_eq!(g.k0.total, FgAbelianGroup::free(1));
        assert_eq!(g.k1.total, FgAbelianGroup::from_cyclic([0, 2]));
        let g = k(-2);
        assert!(g.k0.total.is_trivial());
        assert_eq!(g.k1.total, FgAbelianGroup::from_cyclic([2]));
    }

    #[test]
    fn scaled_inverse_is_integral() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let s = scaled_inverse(&a, &BigInt::from(5)).unwrap();
        assert_eq!(&s * &a, IntMatrix::identity(2).scale(&BigInt::from(5)));
        assert!(scaled_inverse(&a, &BigInt::from(2)).is_err());
    }

    mod props {
        use super::*;
        use crate::linalg::{cokernel_group, kernel_lattice};
        use proptest::prelude::*;

        fn nonsingular(n: usize) -> impl Strategy<Value = IntMatrix> {
            proptest::collection::vec(-4i64..=4, n * n)
                .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
                .prop_filter("det != 0", |a| !determinant(a).unwrap().is_zero())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]
            #[test]
            fn sign_conjugation_keeps_invariants(a in (2usize..=3).prop_flat_map(nonsingular)) {
                let mu = compute_mu(&a).unwrap();
                let d = determinant(&a).unwrap().abs();
                let m1 = scaled_inverse(&mu.mu1, &d).unwrap().one_minus();
                let size = mu.mu1.rows();
                for mask in 0u32..(1 << size) {
                    let w = IntMatrix::diagonal((0..size).map(|i| if mask >> i & 1 == 1 { -1i64 } else { 1 }));
                    let conj = &(&w * &mu.mu1) * &w;
                    let m1w = scaled_inverse(&conj, &d).unwrap().one_minus();
                    prop_assert_eq!(cokernel_group(&m1w), cokernel_group(&m1));
                    prop_assert_eq!(kernel_lattice(&m1w).len(), kernel_lattice(&m1).len());
                }
            }
        }
    }
}
