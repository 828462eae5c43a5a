use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;

/// Integer polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPolynomial {
    #[serde(with = "crate::serde_util::bigint_vec")]
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        IntPolynomial::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    /// `x - r`
    pub fn linear_root(r: BigInt) -> Self {
        IntPolynomial::new(vec![-r, BigInt::one()])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coefficients.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coefficients.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| {
            acc * x + c.to_string().parse::<f64>().unwrap_or(f64::NAN)
        })
    }

    /// Evaluates at a square matrix by Horner's scheme.
    pub fn eval_matrix(&self, a: &IntMatrix) -> IntMatrix {
        let n = a.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coefficients.iter().rev() {
            acc = &acc * a;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    pub fn neg(&self) -> Self {
        IntPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coefficients.len().max(other.coefficients.len());
        IntPolynomial::new((0..len).map(|i| self.coefficient(i) + other.coefficient(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPolynomial::one(), |acc, _| acc.mul(self))
    }

    /// Division with integer quotient. Returns `None` when the remainder is
    /// nonzero or a quotient coefficient is not integral. Panics on a zero divisor.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let lead = divisor.leading();
        let dd = divisor.degree();
        let mut rem = self.coefficients.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let (q, r) = rem[k + dd].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coefficients.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPolynomial::new(quot))
    }

    /// Squared Euclidean norm of the coefficient vector.
    pub fn norm_sq(&self) -> BigInt {
        self.coefficients.iter().map(|c| c * c).sum()
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.coefficients.iter().map(Signed::abs).max().unwrap_or_default()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
