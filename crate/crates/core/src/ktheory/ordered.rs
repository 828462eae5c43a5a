//! Ordered K0 and the trace pairing for minimal affine homeomorphisms of
//! the 3-torus whose linear part is unipotent.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{assemble_group, KGroup, Piece, Summand};
use crate::dynamics::lambda_in_s;
use crate::error::{Error, Result};
use crate::linalg::{adjugate, char_poly, determinant, kernel_lattice, same_lattice, smith_normal_form, IntMatrix, IntPolynomial};
use crate::translation::{SymbolicReal, TranslationVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedK0Report {
    /// `Z² ⊕ ker(1 - (Aᵗ)⁻¹) ⊕ coker(1 - A)`; the unit is the first generator of `Z²`.
    pub decomposition: Vec<Summand>,
    #[serde(with = "crate::serde_util::bigint_vec_vec")]
    pub kernel_basis: Vec<Vec<BigInt>>,
    /// `η(b) = Σ b_i α_i` for each kernel basis vector `b`.
    pub eta_values: Vec<SymbolicReal>,
    /// `1` followed by the `η` values; the trace range is their integer span.
    pub trace_range_generators: Vec<SymbolicReal>,
    pub trace_range_rank: usize,
    pub positive_cone_description: String,
    pub k1: KGroup,
    pub notes: Vec<String>,
}

/// Rank over Q of a list of symbolic reals, treating the symbols and 1 as independent.
pub fn rational_rank(values: &[SymbolicReal]) -> usize {
    let symbols: BTreeSet<&String> = values.iter().flat_map(|v| v.terms.keys()).collect();
    let coords = |v: &SymbolicReal| -> Vec<BigRational> {
        std::iter::once(v.rational.clone())
            .chain(symbols.iter().map(|s| v.terms.get(*s).cloned().unwrap_or_else(BigRational::zero)))
            .collect()
    };
    let rows: Vec<Vec<BigInt>> = values
        .iter()
        .map(|v| {
            let c = coords(v);
            let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            c.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    match IntMatrix::from_rows(rows) {
        Ok(m) => smith_normal_form(&m).rank(),
        Err(_) => 0,
    }
}

pub fn trace_on_k0_minimal(a: &IntMatrix, alpha: &TranslationVector) -> Result<OrderedK0Report> {
    if !a.is_square() || a.rows() != 3 {
        return Err(Error::Precondition("the trace computation needs a 3x3 matrix".into()));
    }
    if alpha.dim() != 3 {
        return Err(Error::Dimension("translation must have three components".into()));
    }
    if !determinant(a)?.is_one() {
        return Err(Error::Precondition("the trace computation needs det A = 1".into()));
    }
    let unipotent = IntPolynomial::from_i64(&[-1, 1]).pow(3);
    if char_poly(a)? != unipotent {
        return Err(Error::Precondition(
            "the trace computation needs characteristic polynomial (x - 1)^3".into(),
        ));
    }
    if !lambda_in_s(a, alpha)?.0 {
        return Err(Error::Precondition("the affine map is not minimal for this translation".into()));
    }

    let at = a.transpose();
    let inv_t = adjugate(&at)?;
    let kernel = kernel_lattice(&inv_t.one_minus());
    let fixed = kernel_lattice(&at.checked_sub(&IntMatrix::identity(3))?);
    if !same_lattice(&kernel, &fixed, 3) {
        return Err(Error::Internal("ker(1 - (Aᵗ)⁻¹) differs from ker(Aᵗ - 1)".into()));
    }

    let eta_values: Vec<SymbolicReal> = kernel.iter().map(|b| alpha.pair(b)).collect();
    let mut trace_range_generators = vec![SymbolicReal::rational(BigRational::one())];
    trace_range_generators.extend(eta_values.iter().cloned());
    let trace_range_rank = rational_rank(&trace_range_generators);

    let one_minus_a = a.one_minus();
    let decomposition = assemble_group(&[
        Piece::free("Z^2", 2),
        Piece::free("ker(1 - (Aᵗ)⁻¹)", kernel.len()),
        Piece::coker("coker(1 - A)", one_minus_a.clone()),
    ])
    .summands;
    let k1 = assemble_group(&[
        Piece::free("Z^2", 2),
        Piece::kernel("ker(1 - A)", &one_minus_a),
        Piece::coker("coker(1 - A)", one_minus_a),
    ]);

    let mut notes = vec![
        "trace normalized to vanish on the second generator of Z^2".to_string(),
        "τ(x, y, u, c) = x + η(u)".to_string(),
    ];
    let symbols = alpha.symbols();
    if !symbols.is_empty() {
        notes.push(format!(
            "assumes 1, {} are linearly independent over Q",
            symbols.join(", ")
        ));
    }

    Ok(OrderedK0Report {
        decomposition,
        kernel_basis: kernel,
        eta_values,
        trace_range_generators,
        trace_range_rank,
        positive_cone_description:
            "(x, y, u, c) is positive iff it is zero or x + η(u) > 0, with x, y ∈ Z, u ∈ ker(1 - (Aᵗ)⁻¹), c ∈ coker(1 - A)"
                .into(),
        k1,
        notes,
    })
}
