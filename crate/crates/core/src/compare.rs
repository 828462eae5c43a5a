//! Isomorphism of the algebras of two strongly transitive, non-injective
//! affine maps via `(K0, [1], K1)`.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::dynamics::classify_transitivity;
use crate::error::{Error, Result};
use crate::ktheory::k_groups_endomorphism;
use crate::linalg::{FgAbelianGroup, IntMatrix};
use crate::marked::{marked_group_iso, MarkedVerdict};
use crate::translation::TranslationVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub verdict: MarkedVerdict,
    pub reasons: Vec<String>,
    pub invariants: Option<[Invariant; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariant {
    pub k0: FgAbelianGroup,
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub unit: Vec<num_bigint::BigInt>,
    pub k1: FgAbelianGroup,
}

fn check_regime(label: &str, a: &IntMatrix, alpha: &TranslationVector) -> Result<()> {
    let n = a.rows();
    if !a.is_square() || !(1..=3).contains(&n) {
        return Err(Error::OutOfRegime(format!("{label}: dimension {n} is outside 1..=3")));
    }
    let v = classify_transitivity(a, alpha)?;
    if v.determinant.abs() < 2.into() {
        return Err(Error::OutOfRegime(format!(
            "{label}: |det A| = {} < 2, the map is injective",
            v.determinant.abs()
        )));
    }
    if !v.strongly_transitive {
        return Err(Error::OutOfRegime(format!("{label}: the map is not strongly transitive")));
    }
    Ok(())
}

pub fn same_algebra(
    first: (&IntMatrix, &TranslationVector),
    second: (&IntMatrix, &TranslationVector),
) -> Result<Comparison> {
    check_regime("first input", first.0, first.1)?;
    check_regime("second input", second.0, second.1)?;
    if first.0.rows() != second.0.rows() {
        return Err(Error::OutOfRegime(format!(
            "dimensions differ: {} vs {}",
            first.0.rows(),
            second.0.rows()
        )));
    }
    let mut reasons = vec!["both maps are strongly transitive with |det A| >= 2".to_string()];
    if first.0 == second.0 {
        reasons.push("same linear part: the algebra does not depend on the translation".into());
        return Ok(Comparison { verdict: MarkedVerdict::Isomorphic, reasons, invariants: None });
    }

    let invariant = |a: &IntMatrix| -> Result<Invariant> {
        let r = k_groups_endomorphism(a)?;
        let g = r.groups.ok_or_else(|| Error::Internal("missing K-theory".into()))?;
        Ok(Invariant { k0: g.k0.total, unit: g.unit.canonical, k1: g.k1.total })
    };
    let (x, y) = (invariant(first.0)?, invariant(second.0)?);
    let verdict = if x.k1 != y.k1 {
        reasons.push(format!("K1 differs: {} vs {}", x.k1, y.k1));
        MarkedVerdict::NotIsomorphic
    } else {
        reasons.push(format!("K1 agrees: {}", x.k1));
        let d = marked_group_iso(&x.k0, &x.unit, &y.k0, &y.unit)?;
        reasons.extend(d.reasons.into_iter().map(|r| format!("(K0, [1]): {r}")));
        d.verdict
    };
    Ok(Comparison { verdict, reasons, invariants: Some([x, y]) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn worked_examples() {
        let two = IntMatrix::identity(2).scale(&BigInt::from(2));
        let a = TranslationVector::from_fractions(&[(1, 3), (0, 1)]);
        let b = TranslationVector::zero(2).with_symbol("t", &[(1, 1), (2, 1)]);
        assert_eq!(same_algebra((&two, &a), (&two, &b)).unwrap().verdict, MarkedVerdict::Isomorphic);

        let z = TranslationVector::zero(1);
        let c = same_algebra((&m(&[&[3]]), &z), (&m(&[&[-3]]), &z)).unwrap();
        assert_eq!(c.verdict, MarkedVerdict::NotIsomorphic);

        let t = TranslationVector::zero(1).with_symbol("t", &[(1, 1)]);
        assert_eq!(same_algebra((&m(&[&[2]]), &z), (&m(&[&[2]]), &t)).unwrap().verdict, MarkedVerdict::Isomorphic);
    }

    #[test]
    fn out_of_regime() {
        let z2 = TranslationVector::zero(2);
        let cat = m(&[&[2, 1], &[1, 1]]);
        let two = IntMatrix::identity(2).scale(&BigInt::from(2));
        assert!(matches!(same_algebra((&cat, &z2), (&two, &z2)), Err(Error::OutOfRegime(_))));
        let z1 = TranslationVector::zero(1);
        assert!(matches!(same_algebra((&m(&[&[2]]), &z1), (&two, &z2)), Err(Error::OutOfRegime(_))));
    }

    #[test]
    fn conjugate_linear_parts_agree() {
        let a = m(&[&[3, 1], &[1, 2]]);
        let p = m(&[&[2, 1], &[1, 1]]);
        let p_inv = m(&[&[1, -1], &[-1, 2]]);
        let b = &(&p * &a) * &p_inv;
        let z = TranslationVector::zero(2);
        let c = same_algebra((&a, &z), (&b, &z)).unwrap();
        assert_eq!(c.verdict, MarkedVerdict::Isomorphic);
        let back = same_algebra((&b, &z), (&a, &z)).unwrap();
        assert_eq!(back.verdict, MarkedVerdict::Isomorphic);
    }

    #[test]
    fn circle_degrees_separate() {
        let z = TranslationVector::zero(1);
        let degrees = [-6i64, -5, -4, -3, -2, 2, 3, 4, 5, 6];
        for &a in &degrees {
            for &b in &degrees {
                let c = same_algebra((&m(&[&[a]]), &z), (&m(&[&[b]]), &z)).unwrap();
                let expect = if a == b { MarkedVerdict::Isomorphic } else { MarkedVerdict::NotIsomorphic };
                assert_eq!(c.verdict, expect, "{a} vs {b}");
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Product of elementary matrices, with its inverse.
        fn unimodular() -> impl Strategy<Value = (IntMatrix, IntMatrix)> {
            proptest::collection::vec((0usize..2, -2i64..=2), 1..5).prop_map(|ops| {
                let (mut p, mut q) = (IntMatrix::identity(2), IntMatrix::identity(2));
                for (i, k) in ops {
                    let e = |k: i64| {
                        let mut r = [[1i64, 0], [0, 1]];
                        r[i][1 - i] = k;
                        IntMatrix::from_i64(&[&r[0], &r[1]])
                    };
                    p = &p * &e(k);
                    q = &e(-k) * &q;
                }
                (p, q)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]
            #[test]
            fn conjugation_invariance(
                entries in proptest::collection::vec(-3i64..=3, 4),
                (p, q) in unimodular(),
            ) {
                let a = IntMatrix::from_i64(&[&entries[..2], &entries[2..]]);
                let z = TranslationVector::zero(2);
                prop_assume!(check_regime("a", &a, &z).is_ok());
                let b = &(&p * &a) * &q;
                prop_assert_eq!(same_algebra((&a, &z), (&b, &z)).unwrap().verdict, MarkedVerdict::Isomorphic);
                prop_assert_eq!(same_algebra((&b, &z), (&a, &z)).unwrap().verdict, MarkedVerdict::Isomorphic);
                prop_assert_eq!(same_algebra((&a, &z), (&a, &z)).unwrap().verdict, MarkedVerdict::Isomorphic);
            }
        }
    }
}
