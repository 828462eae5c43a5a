//! Smith normal form with tracked unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::IntMatrix;

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal with a
/// divisibility chain on its nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    #[serde(skip)]
    pub u_inv: IntMatrix,
    #[serde(skip)]
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries of `d`, including the ones equal to 1.
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the smallest nonzero entry in the trailing block, scanning row-major.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().is_none_or(|(_, b)| a < *b) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(p, _)| p)
    }
}

/// Computes the Smith normal form of any integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = w.min_pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        let mut dirty = false;
        for i in t + 1..m {
            let q = &w.d[(i, t)] / &w.d[(t, t)];
            w.add_row(i, t, &-q);
            dirty |= !w.d[(i, t)].is_zero();
        }
        for j in t + 1..n {
            let q = &w.d[(t, j)] / &w.d[(t, t)];
            w.add_col(j, t, &-q);
            dirty |= !w.d[(t, j)].is_zero();
        }
        if dirty {
            continue;
        }

        let p = w.d[(t, t)].clone();
        let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.d[(i, j)].is_multiple_of(&p)));
        if let Some(i) = offender {
            w.add_row(t, i, &BigInt::from(1));
            continue;
        }

        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..t).map(|i| w.d[(i, i)].clone()).collect();
    SmithDecomposition {
        u: w.u,
        d: w.d,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        invariant_factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::determinant;
    use proptest::prelude::*;

    fn factors(a: &IntMatrix) -> Vec<i64> {
        smith_normal_form(a)
            .invariant_factors
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(factors(&IntMatrix::diagonal([2, 4])), vec![2, 4]);
        assert_eq!(factors(&IntMatrix::from_i64(&[&[1, 1], &[0, 2]])), vec![1, 2]);
        assert_eq!(factors(&IntMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(factors(&IntMatrix::diagonal([2, 3])), vec![1, 6]);
        assert!(factors(&IntMatrix::zeros(2, 3)).is_empty());
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
                IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn decomposition_identities(a in arb_matrix()) {
            let s = smith_normal_form(&a);
            prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
            prop_assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
            prop_assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
            prop_assert_eq!(determinant(&s.u).unwrap().abs(), BigInt::from(1));
            prop_assert_eq!(determinant(&s.v).unwrap().abs(), BigInt::from(1));
            prop_assert!(s.d.is_diagonal());
            for w in s.invariant_factors.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            for (i, f) in s.invariant_factors.iter().enumerate() {
                prop_assert!(f.is_positive());
                prop_assert_eq!(&s.d[(i, i)], f);
            }
            for i in s.rank()..a.rows().min(a.cols()) {
                prop_assert!(s.d[(i, i)].is_zero());
            }
        }
    }
}
