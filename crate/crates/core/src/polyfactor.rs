//! Multiplicity of the root 1 and search for unimodular divisors
//! (monic integer divisors of positive degree with constant term ±1).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntPolynomial;

/// Largest degree for which the divisor search is exhaustive.
pub const MAX_SEARCH_DEGREE: usize = 4;

/// `f = (1 - x)^k · sign · g` with `g(1) != 0` and `g` having positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicitySplit {
    pub k: usize,
    pub g: IntPolynomial,
    pub sign: i8,
}

impl MultiplicitySplit {
    /// Re-expands `(1 - x)^k · sign · g`.
    pub fn expand(&self) -> IntPolynomial {
        let p = IntPolynomial::from_i64(&[1, -1]).pow(self.k as u32).mul(&self.g);
        if self.sign < 0 {
            p.neg()
        } else {
            p
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UnimodularWitness {
    pub divisor: Option<IntPolynomial>,
}

impl UnimodularWitness {
    pub fn is_present(&self) -> bool {
        self.divisor.is_some()
    }
}

/// Quotient `f / g` when it exists over the integers.
pub fn poly_divide_exact(f: &IntPolynomial, g: &IntPolynomial) -> Result<Option<IntPolynomial>> {
    if g.is_zero() {
        return Err(Error::Argument("division by the zero polynomial".into()));
    }
    Ok(f.div_exact(g))
}

pub fn split_at_one(f: &IntPolynomial) -> Result<MultiplicitySplit> {
    if f.is_zero() {
        return Err(Error::Argument("cannot split the zero polynomial".into()));
    }
    let x_minus_one = IntPolynomial::from_i64(&[-1, 1]);
    let mut h = f.clone();
    let mut k = 0;
    while h.eval(&BigInt::one()).is_zero() {
        h = h.div_exact(&x_minus_one).expect("1 is a root");
        k += 1;
    }
    // (x - 1)^k = (-1)^k (1 - x)^k
    let mut sign: i8 = if k % 2 == 0 { 1 } else { -1 };
    if h.leading().is_negative() {
        h = h.neg();
        sign = -sign;
    }
    Ok(MultiplicitySplit { k, g: h, sign })
}

fn is_unimodular(p: &IntPolynomial) -> bool {
    p.degree() >= 1 && p.is_monic() && p.constant_term().abs().is_one()
}

/// Coefficient bound for divisors: `2^deg · (‖f‖₂ + |lead f|)`, rounded up.
pub fn divisor_coefficient_bound(f: &IntPolynomial) -> BigInt {
    let n2 = f.norm_sq();
    let mut root = n2.sqrt();
    if &root * &root < n2 {
        root += 1;
    }
    (root + f.leading().abs()) << f.degree()
}

/// Finds a unimodular divisor of `f` when one exists. Exhaustive for degree at most 4.
pub fn find_unimodular_divisor(f: &IntPolynomial) -> Result<UnimodularWitness> {
    if f.is_zero() {
        return Err(Error::Argument("the zero polynomial has every divisor".into()));
    }
    let deg = f.degree();
    if deg > MAX_SEARCH_DEGREE {
        return Err(Error::UnsupportedDegree { degree: deg, max: MAX_SEARCH_DEGREE });
    }
    let f = if f.leading().is_negative() { f.neg() } else { f.clone() };
    let found = |d: IntPolynomial| Ok(UnimodularWitness { divisor: Some(d) });
    if deg == 0 {
        return Ok(UnimodularWitness::default());
    }

    for r in [1i64, -1] {
        if f.eval(&BigInt::from(r)).is_zero() {
            return found(IntPolynomial::linear_root(BigInt::from(r)));
        }
    }

    if deg >= 2 {
        let bound = divisor_coefficient_bound(&f);
        let mut b = -bound.clone();
        while b <= bound {
            for c in [1i64, -1] {
                let cand = IntPolynomial::new(vec![BigInt::from(c), b.clone(), BigInt::one()]);
                if f.div_exact(&cand).is_some() {
                    return found(cand);
                }
            }
            b += 1;
        }
    }

    if deg == 4 {
        // a cubic divisor leaves a linear cofactor l·x + s with s·(±1) = f(0)
        let l = f.leading();
        let c0 = f.constant_term();
        for s in [c0.clone(), -c0] {
            let cof = IntPolynomial::new(vec![s, l.clone()]);
            if let Some(q) = f.div_exact(&cof) {
                if is_unimodular(&q) {
                    return found(q);
                }
            }
        }
    }

    // a divisor of full degree is f / lead f
    if let Some(q) = f.div_exact(&IntPolynomial::constant(f.leading())) {
        if is_unimodular(&q) {
            return found(q);
        }
    }
    Ok(UnimodularWitness::default())
}
