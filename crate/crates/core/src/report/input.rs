//! Input documents: one affine map per file.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::serde_util::{IntLiteral, RationalLiteral};
use crate::translation::{IrrationalTerm, TranslationVector};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub schema_version: u32,
    pub n: usize,
    pub matrix: Vec<Vec<IntLiteral>>,
    #[serde(default)]
    pub translation: TranslationSpec,
    #[serde(default)]
    pub options: InputOptions,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranslationSpec {
    /// Rational part, one entry per coordinate; empty means zero.
    #[serde(default)]
    pub rational: Vec<RationalLiteral>,
    #[serde(default)]
    pub irrational: Vec<IrrationalSpec>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrationalSpec {
    pub symbol: String,
    pub coefficients: Vec<RationalLiteral>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    /// Extra analyses for `analyze`: `"presentation"`.
    #[serde(default)]
    pub analyses: Vec<String>,
    /// Numerical values of the irrational symbols, used only by simulation.
    #[serde(default)]
    pub symbol_values: BTreeMap<String, f64>,
    #[serde(default)]
    pub box_center: Option<Vec<f64>>,
    #[serde(default)]
    pub box_radius: Option<f64>,
}

/// Parsed and validated affine map.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineInput {
    pub matrix: IntMatrix,
    pub translation: TranslationVector,
    pub options: InputOptions,
}

impl InputSpec {
    pub fn parse(text: &str) -> Result<AffineInput> {
        let spec: InputSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.into_affine()
    }

    pub fn into_affine(self) -> Result<AffineInput> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let n = self.n;
        if n == 0 || self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("matrix must be {n}x{n}")));
        }
        let rows: Vec<Vec<_>> = self.matrix.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
        let matrix = IntMatrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))?;

        let t = self.translation;
        let rational_part = if t.rational.is_empty() {
            TranslationVector::zero(n).rational_part
        } else if t.rational.len() == n {
            t.rational.into_iter().map(|q| q.0).collect()
        } else {
            return Err(Error::Parse(format!("translation has {} entries, expected {n}", t.rational.len())));
        };
        let terms = t
            .irrational
            .into_iter()
            .map(|s| IrrationalTerm { symbol: s.symbol, coefficients: s.coefficients.into_iter().map(|q| q.0).collect() })
            .collect();
        let translation = TranslationVector::new(rational_part, terms).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(AffineInput { matrix, translation, options: self.options })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn parses_exact_rationals() {
        let a = InputSpec::parse(
            r#"{"schema_version": 1, "n": 2, "matrix": [[1, "1"], [0, 1]],
                "translation": {"rational": ["1/3", 0], "irrational": [{"symbol": "t", "coefficients": ["0", "2/5"]}]}}"#,
        )
        .unwrap();
        assert_eq!(a.matrix, IntMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        assert_eq!(a.translation.rational_part[0], BigRational::new(1.into(), 3.into()));
        assert_eq!(a.translation.symbols(), vec!["t".to_string()]);
    }

    #[test]
    fn defaults_to_zero_translation() {
        let a = InputSpec::parse(r#"{"schema_version": 1, "n": 1, "matrix": [[3]]}"#).unwrap();
        assert_eq!(a.translation, TranslationVector::zero(1));
    }

    #[test]
    fn rejects_malformed() {
        for text in [
            r#"{"schema_version": 1, "n": 2, "matrix": [[1, 2]]}"#,
            r#"{"schema_version": 2, "n": 1, "matrix": [[1]]}"#,
            r#"{"schema_version": 1, "n": 1, "matrix": [[1]], "translation": {"rational": ["1/0"]}}"#,
            r#"{"schema_version": 1, "n": 1, "matrix": [[1]], "translation": {"rational": ["1", "2"]}}"#,
            r#"{"schema_version": 1, "n": 1, "matrix": [[1.5]]}"#,
            r#"{"schema_version": 1, "n": 1, "matrix": [[1]], "colour": 3}"#,
            r#"{"schema_version": 1, "n": 1, "matrix": [[1]], "translation": {"irrational": [{"symbol": "t", "coefficients": ["1", "1"]}]}}"#,
        ] {
            assert!(matches!(InputSpec::parse(text), Err(Error::Parse(_))), "{text}");
        }
    }
}
