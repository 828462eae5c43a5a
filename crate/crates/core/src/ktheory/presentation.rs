//! Generators and relations: unitaries `U_g` for characters `g ∈ Zⁿ` and one
//! isometry `S`, with `φ(g) = Aᵗg`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{coset_representatives, determinant, IntMatrix};
use crate::translation::{SymbolicReal, TranslationVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub kind: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraPresentation {
    pub n: usize,
    pub generators: Vec<String>,
    #[serde(with = "crate::serde_util::bigint_vec_vec")]
    pub coset_representatives: Vec<Vec<BigInt>>,
    /// Exponents `⟨g, α⟩ mod 1` of the character values at the coset representatives.
    pub coset_characters: Vec<SymbolicReal>,
    pub range_projection_count: usize,
    pub relations: Vec<Relation>,
}

fn vec_label(v: &[BigInt]) -> String {
    if v.len() == 1 {
        return v[0].to_string();
    }
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Reduces the rational part into `[0, 1)`.
fn mod_one(x: &SymbolicReal) -> SymbolicReal {
    let q = &x.rational;
    let fl = q.numer().div_floor(q.denom());
    SymbolicReal { rational: q - BigRational::from_integer(fl), terms: x.terms.clone() }
}

/// Scalar prefix for `e^{2πi·x}`: empty for 1, `-` for -1.
fn character_prefix(x: &SymbolicReal) -> String {
    let r = mod_one(x);
    if r.is_rational() {
        if r.rational.is_zero() {
            return String::new();
        }
        if r.rational == BigRational::new(1.into(), 2.into()) {
            return "-".into();
        }
    }
    format!("e^(2πi·({r})) ")
}

pub fn presentation(a: &IntMatrix, alpha: &TranslationVector) -> Result<AlgebraPresentation> {
    if !a.is_square() {
        return Err(Error::Dimension("presentation needs a square matrix".into()));
    }
    if determinant(a)?.is_zero() {
        return Err(Error::NotLocalHomeomorphism);
    }
    let n = a.rows();
    if alpha.dim() != n {
        return Err(Error::Dimension(format!("translation has dimension {}, matrix {n}", alpha.dim())));
    }
    let at = a.transpose();
    let reps = coset_representatives(a)?;

    let mut relations = vec![
        Relation { kind: "group".into(), text: "U_g U_h = U_(g+h) for g, h ∈ Z^n, U_0 = 1".into() },
        Relation { kind: "isometry".into(), text: "S* S = 1".into() },
        Relation { kind: "covariance".into(), text: "S U_g = e^(2πi·⟨g,α⟩) U_(Aᵗg) S for g ∈ Z^n".into() },
    ];
    let mut instances: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    for g in &reps {
        if g.iter().any(|x| !x.is_zero()) && !instances.contains(g) {
            instances.push(g.clone());
        }
    }
    for g in &instances {
        let image = at.mul_vec(g)?;
        let prefix = character_prefix(&alpha.pair(g));
        relations.push(Relation {
            kind: "covariance".into(),
            text: format!("S U_{} = {}U_{} S", vec_label(g), prefix, vec_label(&image)),
        });
    }
    let terms: Vec<String> = reps
        .iter()
        .map(|g| {
            let l = vec_label(g);
            format!("U_{l} S S* U_{l}*")
        })
        .collect();
    relations.push(Relation { kind: "partition".into(), text: format!("{} = 1", terms.join(" + ")) });

    Ok(AlgebraPresentation {
        n,
        generators: vec!["U_g (g ∈ Z^n)".into(), "S".into()],
        coset_characters: reps.iter().map(|g| mod_one(&alpha.pair(g))).collect(),
        range_projection_count: reps.len(),
        coset_representatives: reps,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_map() {
        let p = presentation(&IntMatrix::from_i64(&[&[2]]), &TranslationVector::zero(1)).unwrap();
        assert_eq!(p.range_projection_count, 2);
        let texts: Vec<&str> = p.relations.iter().map(|r| r.text.as_str()).collect();
        assert!(texts.contains(&"S U_1 = U_2 S"));
        assert!(texts.contains(&"U_0 S S* U_0* + U_1 S S* U_1* = 1"));
    }

    #[test]
    fn four_range_projections() {
        let a = IntMatrix::identity(2).scale(&BigInt::from(2));
        let p = presentation(&a, &TranslationVector::zero(2)).unwrap();
        assert_eq!(p.range_projection_count, 4);
    }

    #[test]
    fn half_translation_gives_signs() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[0, 2]]);
        let alpha = TranslationVector::from_fractions(&[(1, 2), (0, 1)]);
        let p = presentation(&a, &alpha).unwrap();
        assert_eq!(p.range_projection_count, 2);
        let half = BigRational::new(1.into(), 2.into());
        let values: Vec<&BigRational> = p.coset_characters.iter().map(|c| &c.rational).collect();
        assert!(values.iter().all(|v| v.is_zero() || **v == half));
        assert!(p.relations.iter().any(|r| r.text == "S U_(1,0) = -U_(1,1) S"));
    }

    #[test]
    fn rejects_singular() {
        assert!(presentation(&IntMatrix::zeros(1, 1), &TranslationVector::zero(1)).is_err());
    }
}
