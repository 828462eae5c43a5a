use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{determinant, smith_normal_form, Cokernel, FgAbelianGroup, IntMatrix};
use crate::error::{Error, Result};

/// Basis of `{m ∈ Z^cols : A·m = 0}`; empty when `A` is injective.
pub fn kernel_lattice(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(a);
    (s.rank()..a.cols()).map(|j| s.v.column(j)).collect()
}

/// Structure of `Z^rows / A·Z^cols`.
pub fn cokernel_group(a: &IntMatrix) -> FgAbelianGroup {
    Cokernel::of(a).group().clone()
}

/// Representatives of `Z^n / Aᵗ·Z^n`, exactly `|det A|` of them.
pub fn coset_representatives(a: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
    if determinant(a)?.is_zero() {
        return Err(Error::Singular("coset representatives need det A != 0".into()));
    }
    let s = smith_normal_form(&a.transpose());
    let n = a.rows();
    let mut reps = Vec::new();
    let mut y = vec![BigInt::zero(); n];
    loop {
        reps.push(s.u_inv.mul_vec(&y)?);
        // odometer over the box prod [0, d_i)
        let mut i = 0;
        loop {
            if i == n {
                return Ok(reps);
            }
            y[i] += 1;
            if y[i] < s.invariant_factors[i] {
                break;
            }
            y[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Integer solution `y` of `B·y = v`, if one exists.
pub fn solve_integer(b: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith_normal_form(b);
    let uv = s.u.mul_vec(v).ok()?;
    let mut z = vec![BigInt::zero(); b.cols()];
    for (i, c) in uv.iter().enumerate() {
        if i < s.rank() {
            let (q, r) = c.div_rem(&s.invariant_factors[i]);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    s.v.mul_vec(&z).ok()
}

/// Matrix whose columns are the given vectors of length `dim`.
pub fn columns_matrix(vectors: &[Vec<BigInt>], dim: usize) -> IntMatrix {
    if vectors.is_empty() {
        return IntMatrix::zeros(dim, 1);
    }
    let mut m = IntMatrix::zeros(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    m
}

/// Whether two lists of vectors span the same sublattice of `Z^dim`.
pub fn same_lattice(a: &[Vec<BigInt>], b: &[Vec<BigInt>], dim: usize) -> bool {
    let ma = columns_matrix(a, dim);
    let mb = columns_matrix(b, dim);
    a.iter().all(|v| solve_integer(&mb, v).is_some()) && b.iter().all(|v| solve_integer(&ma, v).is_some())
}

/// Divides a nonzero vector by the gcd of its entries and makes the first
/// nonzero entry positive.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    v.iter().map(|x| if sign { -(x / &g) } else { x / &g }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_lattice(&IntMatrix::from_i64(&[&[0, 0], &[1, 0]]));
        assert!(same_lattice(&k, &[ints(&[0, 1])], 2));
        assert!(kernel_lattice(&IntMatrix::identity(3)).is_empty());
        assert_eq!(kernel_lattice(&IntMatrix::zeros(2, 2)).len(), 2);
        // exhaustive oracle over a small box
        let a = IntMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        for x in -3..=3i64 {
            for y in -3..=3i64 {
                let m = ints(&[x, y]);
                let in_kernel = a.mul_vec(&m).unwrap().iter().all(Zero::is_zero);
                assert_eq!(in_kernel, solve_integer(&columns_matrix(&k, 2), &m).is_some());
            }
        }
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_group(&IntMatrix::diagonal([2, 3])), FgAbelianGroup::from_cyclic([6]));
        assert_eq!(
            cokernel_group(&IntMatrix::from_i64(&[&[1, 1], &[0, 2]])),
            FgAbelianGroup::from_cyclic([2])
        );
        assert_eq!(cokernel_group(&IntMatrix::zeros(1, 1)), FgAbelianGroup::free(1));
    }

    #[test]
    fn coset_examples() {
        assert_eq!(coset_representatives(&IntMatrix::from_i64(&[&[2]])).unwrap().len(), 2);
        assert_eq!(coset_representatives(&IntMatrix::identity(2).scale(&BigInt::from(2))).unwrap().len(), 4);
        assert_eq!(coset_representatives(&IntMatrix::from_i64(&[&[1, 1], &[0, 2]])).unwrap().len(), 2);
        assert!(matches!(
            coset_representatives(&IntMatrix::from_i64(&[&[1, 1], &[1, 1]])),
            Err(Error::Singular(_))
        ));
    }

    fn nonsingular() -> impl Strategy<Value = IntMatrix> {
        (1usize..=3)
            .prop_flat_map(|n| {
                proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
                    IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
                })
            })
            .prop_filter("small nonzero det", |a| {
                let d = determinant(a).unwrap().abs();
                !d.is_zero() && d <= BigInt::from(64)
            })
    }

    proptest! {
        #[test]
        fn cosets_are_distinct_and_complete(a in nonsingular()) {
            let reps = coset_representatives(&a).unwrap();
            let det = determinant(&a).unwrap().abs();
            prop_assert_eq!(BigInt::from(reps.len()), det);
            let at = a.transpose();
            for i in 0..reps.len() {
                for j in i + 1..reps.len() {
                    let diff: Vec<BigInt> = reps[i].iter().zip(&reps[j]).map(|(x, y)| x - y).collect();
                    prop_assert!(solve_integer(&at, &diff).is_none());
                }
            }
        }

        #[test]
        fn cokernel_matches_invariant_factors(v in proptest::collection::vec(-6i64..=6, 6)) {
            let a = IntMatrix::new(2, 3, v.into_iter().map(BigInt::from).collect()).unwrap();
            let s = smith_normal_form(&a);
            let g = cokernel_group(&a);
            let nonunit: Vec<BigInt> = s.invariant_factors.iter().filter(|d| **d != BigInt::from(1)).cloned().collect();
            prop_assert_eq!(g.torsion, nonunit);
            prop_assert_eq!(g.free_rank, a.rows() - s.rank());
            for m in kernel_lattice(&a) {
                prop_assert!(a.mul_vec(&m).unwrap().iter().all(Zero::is_zero));
            }
            prop_assert_eq!(kernel_lattice(&a).len(), a.cols() - s.rank());
        }
    }
}
