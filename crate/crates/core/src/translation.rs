//! Exact translation vectors `α` with `λ_i = e^{2πiα_i}`: a rational part
//! plus rational multiples of named irrational symbols. The symbols are
//! assumed linearly independent over Q together with 1; nothing here checks it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_util::format_rational;

/// `rational + Σ coeff_s · s` over named symbols `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SymbolicReal {
    #[serde(with = "crate::serde_util::rational_string")]
    pub rational: BigRational,
    #[serde(with = "rational_map")]
    pub terms: BTreeMap<String, BigRational>,
}

mod rational_map {
    use super::*;
    use crate::serde_util::RationalLiteral;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        m.iter()
            .map(|(k, v)| (k.clone(), format_rational(v)))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<String, BigRational>, D::Error> {
        BTreeMap::<String, RationalLiteral>::deserialize(d).map(|m| m.into_iter().map(|(k, v)| (k, v.0)).collect())
    }
}

impl SymbolicReal {
    pub fn rational(q: BigRational) -> Self {
        SymbolicReal { rational: q, terms: BTreeMap::new() }
    }

    pub fn symbol(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(name.to_string(), BigRational::from_integer(1.into()));
        SymbolicReal { rational: BigRational::zero(), terms }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymbolicReal) -> SymbolicReal {
        let mut out = self.clone();
        out.rational += &other.rational;
        for (k, v) in &other.terms {
            let e = out.terms.entry(k.clone()).or_insert_with(BigRational::zero);
            *e += v;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn scale(&self, k: &BigRational) -> SymbolicReal {
        if k.is_zero() {
            return SymbolicReal::default();
        }
        SymbolicReal {
            rational: &self.rational * k,
            terms: self.terms.iter().map(|(s, v)| (s.clone(), v * k)).collect(),
        }
    }

    /// Numerical value given values for every symbol.
    pub fn to_f64(&self, values: &BTreeMap<String, f64>) -> Result<f64> {
        let mut x = self.rational.to_f64().unwrap_or(f64::NAN);
        for (s, c) in &self.terms {
            let v = values
                .get(s)
                .ok_or_else(|| Error::Argument(format!("no numerical value for symbol {s}")))?;
            x += c.to_f64().unwrap_or(f64::NAN) * v;
        }
        Ok(x)
    }
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.rational.is_zero() || self.terms.is_empty() {
            parts.push(format_rational(&self.rational));
        }
        for (s, c) in &self.terms {
            let one = BigRational::from_integer(1.into());
            parts.push(if *c == one {
                s.clone()
            } else if *c == -one {
                format!("-{s}")
            } else {
                format!("{}*{s}", format_rational(c))
            });
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrationalTerm {
    pub symbol: String,
    #[serde(with = "crate::serde_util::rational_vec")]
    pub coefficients: Vec<BigRational>,
}

/// `α = q₀ + Σ_j q_j·θ_j` componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationVector {
    #[serde(with = "crate::serde_util::rational_vec")]
    pub rational_part: Vec<BigRational>,
    #[serde(default)]
    pub irrational_terms: Vec<IrrationalTerm>,
}

impl TranslationVector {
    pub fn new(rational_part: Vec<BigRational>, irrational_terms: Vec<IrrationalTerm>) -> Result<Self> {
        let t = TranslationVector { rational_part, irrational_terms };
        t.validate()?;
        Ok(t)
    }

    pub fn zero(n: usize) -> Self {
        TranslationVector { rational_part: vec![BigRational::zero(); n], irrational_terms: Vec::new() }
    }

    pub fn rational(values: Vec<BigRational>) -> Self {
        TranslationVector { rational_part: values, irrational_terms: Vec::new() }
    }

    /// Convenience: rational part from `(numerator, denominator)` pairs.
    pub fn from_fractions(parts: &[(i64, i64)]) -> Self {
        TranslationVector::rational(
            parts.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect(),
        )
    }

    /// Adds `coefficients · symbol` to the vector.
    pub fn with_symbol(mut self, symbol: &str, coefficients: &[(i64, i64)]) -> Self {
        self.irrational_terms.push(IrrationalTerm {
            symbol: symbol.to_string(),
            coefficients: coefficients.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect(),
        });
        self
    }

    pub fn dim(&self) -> usize {
        self.rational_part.len()
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for t in &self.irrational_terms {
            if t.coefficients.len() != self.dim() {
                return Err(Error::Dimension(format!(
                    "symbol {} has {} coefficients, expected {}",
                    t.symbol,
                    t.coefficients.len(),
                    self.dim()
                )));
            }
            if t.symbol.is_empty() || !seen.insert(t.symbol.clone()) {
                return Err(Error::Argument(format!("symbol name {:?} is empty or repeated", t.symbol)));
            }
        }
        Ok(())
    }

    pub fn symbols(&self) -> Vec<String> {
        self.irrational_terms.iter().map(|t| t.symbol.clone()).collect()
    }

    /// Symbols that actually occur with a nonzero coefficient.
    pub fn active_terms(&self) -> impl Iterator<Item = &IrrationalTerm> {
        self.irrational_terms.iter().filter(|t| t.coefficients.iter().any(|c| !c.is_zero()))
    }

    pub fn has_irrational_part(&self) -> bool {
        self.active_terms().next().is_some()
    }

    pub fn component(&self, i: usize) -> SymbolicReal {
        let mut s = SymbolicReal::rational(self.rational_part[i].clone());
        for t in &self.irrational_terms {
            if !t.coefficients[i].is_zero() {
                s.terms.insert(t.symbol.clone(), t.coefficients[i].clone());
            }
        }
        s
    }

    /// `⟨m, α⟩ = Σ m_i α_i`.
    pub fn pair(&self, m: &[BigInt]) -> SymbolicReal {
        m.iter().enumerate().fold(SymbolicReal::default(), |acc, (i, mi)| {
            acc.add(&self.component(i).scale(&BigRational::from_integer(mi.clone())))
        })
    }

    pub fn to_f64(&self, values: &BTreeMap<String, f64>) -> Result<Vec<f64>> {
        (0..self.dim()).map(|i| self.component(i).to_f64(values)).collect()
    }
}

impl fmt::Display for TranslationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.dim()).map(|i| self.component(i).to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_and_display() {
        let a = TranslationVector::from_fractions(&[(1, 2), (0, 1)]).with_symbol("t", &[(0, 1), (1, 1)]);
        assert_eq!(a.to_string(), "(1/2, t)");
        let m = vec![BigInt::from(2), BigInt::from(-3)];
        let p = a.pair(&m);
        assert_eq!(p.to_string(), "1 - 3*t");
        assert!(!p.is_rational());
        assert!(a.pair(&[BigInt::from(1), BigInt::zero()]).is_rational());
        let mut vals = BTreeMap::new();
        vals.insert("t".to_string(), 0.25);
        assert!((p.to_f64(&vals).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        let bad = TranslationVector::zero(2).with_symbol("t", &[(1, 1)]);
        assert!(bad.validate().is_err());
        let dup = TranslationVector::zero(1).with_symbol("t", &[(1, 1)]).with_symbol("t", &[(1, 1)]);
        assert!(dup.validate().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let a = TranslationVector::from_fractions(&[(1, 3)]).with_symbol("theta", &[(-2, 5)]);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"1/3\"") && s.contains("\"-2/5\""));
        let back: TranslationVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
