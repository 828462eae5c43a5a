use num_traits::{One, Signed};

use super::tables::det_label;
use super::{generic_k_groups, table_k_groups, trace_on_k0_minimal, KTheoryReport};
use crate::dynamics::classify_transitivity;
use crate::error::{Error, Result};
use crate::linalg::{determinant, IntMatrix};
use crate::marked::{marked_group_iso, MarkedVerdict};
use crate::translation::TranslationVector;

fn check_dimension(a: &IntMatrix) -> Result<usize> {
    let n = a.rows();
    if !a.is_square() || !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(n)
}

/// K-theory of the algebra of `φ_A`, from the case tables, cross-checked
/// against the generic exact-sequence assembly.
pub fn k_groups_endomorphism(a: &IntMatrix) -> Result<KTheoryReport> {
    let n = check_dimension(a)?;
    let det = determinant(a)?;
    let label = det_label(n, &det)?;
    let table = table_k_groups(a)?;
    let generic = generic_k_groups(a)?;
    if table.k0.total != generic.k0.total || table.k1.total != generic.k1.total {
        return Err(Error::Internal(format!(
            "case table ({} / {}) disagrees with the exact sequence ({} / {})",
            table.k0.total, table.k1.total, generic.k0.total, generic.k1.total
        )));
    }
    let mut notes = Vec::new();
    match marked_group_iso(&table.k0.total, &table.unit.canonical, &generic.k0.total, &generic.unit.canonical)?.verdict {
        MarkedVerdict::Isomorphic => notes.push("unit class agrees with the exact-sequence assembly".into()),
        MarkedVerdict::Undecided => notes.push("unit class cross-check undecided (torsion too large to factor)".into()),
        MarkedVerdict::NotIsomorphic => {
            return Err(Error::Internal("unit class disagrees with the exact-sequence assembly".into()))
        }
    }
    if n == 1 && det == (-num_bigint::BigInt::one()) {
        notes.push("K1 = Z ⊕ Z_2: the exact sequence has ker(1 - 1) = Z in addition to coker(1 + 1) = Z_2".into());
    }
    let verdict = classify_transitivity(a, &TranslationVector::zero(n))?;
    let simple = verdict.strongly_transitive;
    Ok(KTheoryReport {
        n,
        case_label: label,
        groups: Some(table),
        simple,
        purely_infinite: simple && det.abs() >= 2.into(),
        trace_order: None,
        notes,
    })
}

/// Case letter of the classification summaries for `x ↦ λ·φ_A(x)`.
fn affine_label(n: usize, det: &num_bigint::BigInt, k: usize, transitive: bool) -> String {
    let one = num_bigint::BigInt::one();
    let letter = if n == 1 {
        if det.abs() == one {
            "C"
        } else if det.is_positive() {
            "A"
        } else {
            "B"
        }
    } else if k == 0 {
        match (det.abs() == one, det.is_positive()) {
            (true, _) => "B",
            (false, _) if !transitive => return "not strongly transitive (eigenvalue obstruction)".into(),
            (false, true) => "A",
            (false, false) => "C",
        }
    } else if det.abs() == one {
        if det.is_positive() {
            "E"
        } else {
            "F"
        }
    } else if det.is_positive() {
        "D"
    } else {
        "G"
    };
    letter.to_string()
}

/// K-theory of the algebra of the affine map `x ↦ λ·φ_A(x)`.
pub fn k_groups_affine(a: &IntMatrix, alpha: &TranslationVector) -> Result<KTheoryReport> {
    let n = check_dimension(a)?;
    let verdict = classify_transitivity(a, alpha)?;
    let det = verdict.determinant.clone();
    let label = affine_label(n, &det, verdict.multiplicity_k, verdict.strongly_transitive);
    let mut notes = Vec::new();
    if !alpha.symbols().is_empty() {
        notes.push(format!(
            "assumes 1, {} are linearly independent over Q",
            alpha.symbols().join(", ")
        ));
    }

    if !verdict.strongly_transitive {
        notes.push("not strongly transitive: the algebra is not simple and no K-theory is reported".into());
        return Ok(KTheoryReport {
            n,
            case_label: label,
            groups: None,
            simple: false,
            purely_infinite: false,
            trace_order: None,
            notes,
        });
    }

    let endo = k_groups_endomorphism(a)?;
    if det.abs() >= 2.into() {
        notes.push("same algebra as for the linear part; independent of the translation".into());
        notes.extend(endo.notes);
        return Ok(KTheoryReport {
            n,
            case_label: label,
            groups: endo.groups,
            simple: true,
            purely_infinite: true,
            trace_order: None,
            notes,
        });
    }
    if !det.is_one() {
        return Err(Error::Internal("strongly transitive map with det A = -1".into()));
    }

    // minimal homeomorphism: unique trace, finite algebra
    notes.extend(endo.notes);
    let trace_order = match n {
        1 => None,
        2 => {
            notes.push("ordered K0: external reference, not computed".into());
            None
        }
        _ => Some(trace_on_k0_minimal(a, alpha)?),
    };
    Ok(KTheoryReport {
        n,
        case_label: label,
        groups: endo.groups,
        simple: true,
        purely_infinite: false,
        trace_order,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FgAbelianGroup;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn circle_reports() {
        let r = k_groups_endomorphism(&m(&[&[3]])).unwrap();
        assert_eq!(r.k0().unwrap(), &FgAbelianGroup::from_cyclic([2, 0]));
        assert_eq!(r.k1().unwrap(), &FgAbelianGroup::free(1));
        assert!(r.simple && r.purely_infinite);
        let g = r.groups.unwrap();
        assert_eq!(g.unit.summand_name, "Z_2");
        assert_eq!(g.unit.value, vec![BigInt::from(1)]);

        let r = k_groups_endomorphism(&m(&[&[-2]])).unwrap();
        assert!(r.k0().unwrap().is_trivial());
        assert_eq!(r.k1().unwrap(), &FgAbelianGroup::from_cyclic([2]));
    }

    #[test]
    fn affine_labels_and_flags() {
        let theta = TranslationVector::zero(2).with_symbol("t", &[(1, 1), (1, 1)]);
        let r = k_groups_affine(&IntMatrix::identity(2).scale(&BigInt::from(2)), &theta).unwrap();
        assert_eq!(r.case_label, "A");
        assert!(r.simple && r.purely_infinite);
        assert_eq!(r.k0().unwrap(), &FgAbelianGroup::from_cyclic([0, 3]));

        let skew = m(&[&[1, 1], &[0, 1]]);
        let r = k_groups_affine(&skew, &TranslationVector::zero(2).with_symbol("t", &[(0, 1), (1, 1)])).unwrap();
        assert_eq!(r.case_label, "E");
        assert!(r.simple && !r.purely_infinite);
        assert!(r.notes.iter().any(|s| s.contains("external reference")));

        let r = k_groups_affine(&skew, &TranslationVector::from_fractions(&[(0, 1), (1, 3)])).unwrap();
        assert!(!r.simple && r.groups.is_none());

        let r = k_groups_affine(&m(&[&[1]]), &TranslationVector::zero(1).with_symbol("t", &[(1, 1)])).unwrap();
        assert_eq!(r.case_label, "C");
        assert!(r.simple && !r.purely_infinite);
        assert_eq!(r.k0().unwrap(), &FgAbelianGroup::free(2));
        assert_eq!(r.k1().unwrap(), &FgAbelianGroup::free(2));
    }

    #[test]
    fn three_torus_minimal_report() {
        let a = m(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
        let alpha = TranslationVector::zero(3)
            .with_symbol("t1", &[(1, 1), (0, 1), (0, 1)])
            .with_symbol("t2", &[(0, 1), (0, 1), (1, 1)]);
        let r = k_groups_affine(&a, &alpha).unwrap();
        assert_eq!(r.case_label, "E");
        assert_eq!(r.trace_order.as_ref().unwrap().trace_range_rank, 3);
    }

    #[test]
    fn unsupported_inputs() {
        assert!(matches!(k_groups_endomorphism(&IntMatrix::identity(4)), Err(Error::UnsupportedDimension(4))));
        assert!(matches!(k_groups_endomorphism(&IntMatrix::zeros(2, 2)), Err(Error::NotLocalHomeomorphism)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn translation(n: usize) -> impl Strategy<Value = TranslationVector> {
            (proptest::collection::vec((-5i64..=5, 1i64..=7), n), proptest::collection::vec(-2i64..=2, n), any::<bool>())
                .prop_map(move |(q, t, irr)| {
                    let v = TranslationVector::from_fractions(&q);
                    if irr {
                        v.with_symbol("t", &t.iter().map(|&x| (x, 1)).collect::<Vec<_>>())
                    } else {
                        v
                    }
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            #[test]
            fn groups_do_not_depend_on_translation(
                (a, x, y) in (1usize..=3).prop_flat_map(|n| (
                    proptest::collection::vec(-3i64..=3, n * n)
                        .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()),
                    translation(n),
                    translation(n),
                ))
            ) {
                let det = determinant(&a).unwrap();
                prop_assume!(det.abs() >= BigInt::from(2));
                let (rx, ry) = (k_groups_affine(&a, &x).unwrap(), k_groups_affine(&a, &y).unwrap());
                if rx.simple && ry.simple {
                    prop_assert_eq!(rx.groups, ry.groups);
                }
            }
        }
    }
}
