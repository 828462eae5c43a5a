//! Exactness and strong transitivity of affine torus maps `x ↦ λ·φ_A(x)`.
//!
//! Characters of the torus are integer vectors `m`, and the dual of `φ_A`
//! acts on them by `Aᵗ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{char_poly, columns_matrix, determinant, kernel_lattice, primitive, IntMatrix, IntPolynomial};
use crate::polyfactor::{find_unimodular_divisor, split_at_one, UnimodularWitness};
use crate::translation::TranslationVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransitivityCase {
    /// No unimodular polynomial divides the characteristic polynomial.
    Case1Exact,
    /// The root 1 occurs and no unimodular polynomial divides the rest.
    Case2ConditionallyTransitive,
    /// A unimodular polynomial divides the part coprime to `1 - x`.
    Case3Never,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityVerdict {
    pub local_homeo: bool,
    pub homeomorphism: bool,
    #[serde(with = "crate::serde_util::bigint_string")]
    pub determinant: BigInt,
    pub char_poly: IntPolynomial,
    pub case_tag: TransitivityCase,
    pub strongly_transitive: bool,
    pub exact: bool,
    pub multiplicity_k: usize,
    /// Normalized cofactor `g` in `f = (1 - x)^k · (±g)`.
    pub cofactor: IntPolynomial,
    /// Unimodular divisor of `f` (case 2) or of `g` (case 3).
    pub witness: UnimodularWitness,
    /// Nonzero character fixed by `Aᵗ` that pairs rationally with `α`.
    #[serde(with = "opt_vec", default)]
    pub dual_obstruction: Option<Vec<BigInt>>,
}

mod opt_vec {
    use super::*;
    use crate::serde_util::IntLiteral;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<BigInt>>, D::Error> {
        Option::<Vec<IntLiteral>>::deserialize(d).map(|o| o.map(|v| v.into_iter().map(|x| x.0).collect()))
    }
}

fn require_square(a: &IntMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::Dimension(format!("expected a square matrix, got {}x{}", a.rows(), a.cols())))
    }
}

fn require_nonsingular(a: &IntMatrix) -> Result<BigInt> {
    require_square(a)?;
    let det = determinant(a)?;
    if det.is_zero() {
        return Err(Error::NotLocalHomeomorphism);
    }
    Ok(det)
}

pub fn is_local_homeomorphism(a: &IntMatrix) -> Result<bool> {
    require_square(a)?;
    Ok(!determinant(a)?.is_zero())
}

/// Exactness of the endomorphism `φ_A`.
pub fn is_exact_endomorphism(a: &IntMatrix) -> Result<bool> {
    require_nonsingular(a)?;
    Ok(!find_unimodular_divisor(&char_poly(a)?)?.is_present())
}

/// Basis of the characters fixed by `Aᵗ` that are orthogonal to every
/// irrational direction of `α`. The closed subgroup generated by `λ` and
/// `{x⁻¹φ_A(x)}` is the whole torus exactly when this lattice is zero.
pub fn annihilator_lattice(a: &IntMatrix, alpha: &TranslationVector) -> Result<Vec<Vec<BigInt>>> {
    require_square(a)?;
    let n = a.rows();
    if alpha.dim() != n {
        return Err(Error::Dimension(format!("translation has dimension {}, matrix {n}", alpha.dim())));
    }
    alpha.validate()?;
    let fixed = kernel_lattice(&a.transpose().checked_sub(&IntMatrix::identity(n))?);
    if fixed.is_empty() {
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<BigInt>> = alpha
        .active_terms()
        .map(|t| {
            let l = t.coefficients.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            t.coefficients.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect();
    if rows.is_empty() {
        return Ok(fixed);
    }
    let c = IntMatrix::from_rows(rows)?;
    let b = columns_matrix(&fixed, n);
    let combos = kernel_lattice(&c.checked_mul(&b)?);
    combos.iter().map(|y| b.mul_vec(y)).collect()
}

/// Whether `λ` lies in the set for which the affine map is strongly
/// transitive, with an obstructing character when it does not.
pub fn lambda_in_s(a: &IntMatrix, alpha: &TranslationVector) -> Result<(bool, Option<Vec<BigInt>>)> {
    require_nonsingular(a)?;
    let lattice = annihilator_lattice(a, alpha)?;
    match lattice.first() {
        None => Ok((true, None)),
        Some(m) => Ok((false, Some(primitive(m)))),
    }
}

pub fn classify_transitivity(a: &IntMatrix, alpha: &TranslationVector) -> Result<TransitivityVerdict> {
    let det = require_nonsingular(a)?;
    if alpha.dim() != a.rows() {
        return Err(Error::Dimension(format!(
            "translation has dimension {}, matrix {}",
            alpha.dim(),
            a.rows()
        )));
    }
    alpha.validate()?;
    let f = char_poly(a)?;
    let split = split_at_one(&f)?;
    let on_f = find_unimodular_divisor(&f)?;
    let homeomorphism = det.abs().is_one();

    let base = TransitivityVerdict {
        local_homeo: true,
        homeomorphism,
        determinant: det,
        char_poly: f,
        case_tag: TransitivityCase::Case1Exact,
        strongly_transitive: true,
        exact: true,
        multiplicity_k: split.k,
        cofactor: split.g.clone(),
        witness: UnimodularWitness::default(),
        dual_obstruction: None,
    };
    if !on_f.is_present() {
        return Ok(base);
    }
    let on_g = find_unimodular_divisor(&split.g)?;
    if split.k >= 1 && !on_g.is_present() {
        let (inside, obstruction) = lambda_in_s(a, alpha)?;
        return Ok(TransitivityVerdict {
            case_tag: TransitivityCase::Case2ConditionallyTransitive,
            strongly_transitive: inside,
            exact: false,
            witness: on_f,
            dual_obstruction: obstruction,
            ..base
        });
    }
    Ok(TransitivityVerdict {
        case_tag: TransitivityCase::Case3Never,
        strongly_transitive: false,
        exact: false,
        witness: on_g,
        ..base
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn local_homeomorphism_examples() {
        assert!(is_local_homeomorphism(&m(&[&[2, 1], &[1, 1]])).unwrap());
        assert!(!is_local_homeomorphism(&m(&[&[1, 1], &[1, 1]])).unwrap());
        assert!(is_local_homeomorphism(&m(&[&[3]])).unwrap());
    }

    #[test]
    fn exactness_examples() {
        assert!(is_exact_endomorphism(&m(&[&[2]])).unwrap());
        assert!(!is_exact_endomorphism(&m(&[&[2, 1], &[1, 1]])).unwrap());
        assert!(!is_exact_endomorphism(&IntMatrix::identity(3)).unwrap());
        assert_eq!(is_exact_endomorphism(&m(&[&[1, 1], &[1, 1]])), Err(Error::NotLocalHomeomorphism));
    }

    #[test]
    fn lambda_examples() {
        let rot = TranslationVector::zero(1).with_symbol("t", &[(1, 1)]);
        assert_eq!(lambda_in_s(&m(&[&[1]]), &rot).unwrap(), (true, None));
        let half = TranslationVector::from_fractions(&[(1, 2)]);
        assert_eq!(lambda_in_s(&m(&[&[1]]), &half).unwrap(), (false, Some(ints(&[1]))));
        let skew = m(&[&[1, 1], &[0, 1]]);
        let a = TranslationVector::zero(2).with_symbol("t", &[(0, 1), (1, 1)]);
        assert_eq!(lambda_in_s(&skew, &a).unwrap(), (true, None));
        // irrational direction along the first coordinate is invisible to the fixed character (0,1)
        let b = TranslationVector::zero(2).with_symbol("t", &[(1, 1), (0, 1)]);
        assert_eq!(lambda_in_s(&skew, &b).unwrap(), (false, Some(ints(&[0, 1]))));
    }

    #[test]
    fn classification_examples() {
        let v = classify_transitivity(&m(&[&[2]]), &TranslationVector::from_fractions(&[(1, 7)])).unwrap();
        assert_eq!(v.case_tag, TransitivityCase::Case1Exact);
        assert!(v.exact && v.strongly_transitive);

        let v = classify_transitivity(&m(&[&[-1]]), &TranslationVector::zero(1).with_symbol("t", &[(1, 1)])).unwrap();
        assert_eq!(v.case_tag, TransitivityCase::Case3Never);
        assert!(!v.strongly_transitive && v.homeomorphism);

        let v = classify_transitivity(&m(&[&[1, 1], &[0, 1]]), &TranslationVector::from_fractions(&[(0, 1), (1, 3)])).unwrap();
        assert_eq!(v.case_tag, TransitivityCase::Case2ConditionallyTransitive);
        assert!(!v.strongly_transitive && !v.exact);
        assert_eq!(v.dual_obstruction, Some(ints(&[0, 1])));

        let cat = classify_transitivity(&m(&[&[2, 1], &[1, 1]]), &TranslationVector::zero(2)).unwrap();
        assert_eq!(cat.case_tag, TransitivityCase::Case3Never);
        assert_eq!(cat.witness.divisor, Some(IntPolynomial::from_i64(&[1, -3, 1])));

        assert!(matches!(
            classify_transitivity(&m(&[&[1, 0], &[0, 1]]), &TranslationVector::zero(3)),
            Err(Error::Dimension(_))
        ));
    }

    fn arb_alpha(n: usize) -> impl Strategy<Value = TranslationVector> {
        (
            proptest::collection::vec((-5i64..=5, 1i64..=6), n),
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..3),
        )
            .prop_map(move |(q, irr)| {
                let mut t = TranslationVector::rational(
                    q.iter().map(|&(p, d)| BigRational::new(p.into(), d.into())).collect(),
                );
                for (j, c) in irr.iter().enumerate() {
                    let coeffs: Vec<(i64, i64)> = c.iter().map(|&x| (x, 1)).collect();
                    t = t.with_symbol(&format!("s{j}"), &coeffs);
                }
                t
            })
    }

    fn arb_nonsingular(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-3i64..=3, n * n)
            .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
            .prop_filter("det != 0", |a| !determinant(a).unwrap().is_zero())
    }

    proptest! {
        #[test]
        fn verdict_invariants(a in arb_nonsingular(2), x in arb_alpha(2), y in arb_alpha(2)) {
            let v = classify_transitivity(&a, &x).unwrap();
            let w = classify_transitivity(&a, &y).unwrap();
            prop_assert_eq!(v.exact, w.exact);
            prop_assert!(!v.exact || v.strongly_transitive);
            if v.case_tag == TransitivityCase::Case1Exact {
                prop_assert_eq!(&v, &w);
            }
            if v.case_tag == TransitivityCase::Case3Never {
                prop_assert!(!v.strongly_transitive);
            }
            if v.homeomorphism {
                prop_assert!(!v.exact);
            }
            prop_assert_eq!(v.dual_obstruction.is_some(),
                v.case_tag == TransitivityCase::Case2ConditionallyTransitive && !v.strongly_transitive);
            if let Some(m) = &v.dual_obstruction {
                let fixed = a.transpose().one_minus().neg().mul_vec(m).unwrap();
                prop_assert!(fixed.iter().all(Zero::is_zero));
                prop_assert!(x.pair(m).is_rational());
            }
            if v.case_tag == TransitivityCase::Case2ConditionallyTransitive && !x.has_irrational_part() {
                prop_assert!(!v.strongly_transitive);
            }
        }
    }
}
