//! Closed-form case tables for dimensions 1, 2 and 3, selected by the sign
//! and size of `det A`. Summands are listed in the order of the tables.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{assemble, KGroups, Piece};
use crate::error::{Error, Result};
use crate::linalg::{cofactor_matrix, determinant, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DetClass {
    AtLeastTwo,
    One,
    MinusOne,
    AtMostMinusTwo,
}

fn classify(det: &BigInt) -> Result<DetClass> {
    Ok(match (det.sign(), det.abs().cmp(&BigInt::one())) {
        (_, Ordering::Less) => return Err(Error::NotLocalHomeomorphism),
        (num_bigint::Sign::Plus, Ordering::Equal) => DetClass::One,
        (num_bigint::Sign::Plus, _) => DetClass::AtLeastTwo,
        (_, Ordering::Equal) => DetClass::MinusOne,
        _ => DetClass::AtMostMinusTwo,
    })
}

/// Label describing which row of the table applies.
pub(crate) fn det_label(n: usize, det: &BigInt) -> Result<String> {
    let var = if n == 1 { "a" } else { "det A" };
    Ok(match classify(det)? {
        DetClass::AtLeastTwo => format!("{var} >= 2"),
        DetClass::One => format!("{var} = 1"),
        DetClass::MinusOne => format!("{var} = -1"),
        DetClass::AtMostMinusTwo => format!("{var} <= -2"),
    })
}

/// Table lookup; returns the groups with the unit placed per the table.
pub fn table_k_groups(a: &IntMatrix) -> Result<KGroups> {
    let n = a.rows();
    if !a.is_square() || !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let det = determinant(a)?;
    let class = classify(&det)?;
    let d = det.abs();
    let z = |k: usize| Piece::free(if k == 1 { "Z".to_string() } else { format!("Z^{k}") }, k);
    let zm = |m: BigInt| Piece::cyclic(format!("Z_{m}"), m);
    let two = || zm(BigInt::from(2));
    let torsion_unit = || zm(&d - 1);

    if n == 1 {
        return match class {
            DetClass::AtLeastTwo => assemble(&[torsion_unit(), z(1)], &[z(1)], 0, &[1]),
            DetClass::One => assemble(&[z(2)], &[z(2)], 0, &[1, 0]),
            DetClass::MinusOne => assemble(&[z(1)], &[z(1), two()], 0, &[1]),
            DetClass::AtMostMinusTwo => assemble(&[torsion_unit()], &[two()], 0, &[1]),
        };
    }

    let one_minus_a = a.one_minus();
    let one_plus_a = a.one_plus();
    let ker = |name: &str, m: &IntMatrix| Piece::kernel(name, m);
    let coker = |name: &str, m: &IntMatrix| Piece::coker(name, m.clone());

    if n == 2 {
        return match class {
            DetClass::AtLeastTwo => assemble(
                &[z(1), torsion_unit(), ker("ker(1 - A)", &one_minus_a)],
                &[z(1), coker("coker(1 - A)", &one_minus_a)],
                1,
                &[1],
            ),
            DetClass::One => assemble(
                &[z(2), ker("ker(1 - A)", &one_minus_a)],
                &[z(2), coker("coker(1 - A)", &one_minus_a)],
                0,
                &[1, 0],
            ),
            DetClass::MinusOne => assemble(
                &[z(1), two(), ker("ker(1 + A)", &one_plus_a)],
                &[z(1), coker("coker(1 + A)", &one_plus_a)],
                0,
                &[1],
            ),
            DetClass::AtMostMinusTwo => assemble(
                &[two(), torsion_unit(), ker("ker(1 + A)", &one_plus_a)],
                &[coker("coker(1 + A)", &one_plus_a)],
                1,
                &[1],
            ),
        };
    }

    let cof = cofactor_matrix(a)?;
    let one_minus_cof = cof.one_minus();
    let one_plus_cof = cof.one_plus();
    match class {
        DetClass::AtLeastTwo => assemble(
            &[
                z(1),
                ker("ker(1 - cof A)", &one_minus_cof),
                torsion_unit(),
                coker("coker(1 - A)", &one_minus_a),
            ],
            &[z(1), ker("ker(1 - A)", &one_minus_a), coker("coker(1 - cof A)", &one_minus_cof)],
            2,
            &[1],
        ),
        DetClass::One => {
            let pieces = [z(2), ker("ker(1 - A)", &one_minus_a), coker("coker(1 - A)", &one_minus_a)];
            assemble(&pieces, &pieces, 0, &[1, 0])
        }
        DetClass::MinusOne => assemble(
            &[z(1), ker("ker(1 - A)", &one_minus_a), coker("coker(1 + A)", &one_plus_a)],
            &[
                z(1),
                ker("ker(1 + A)", &one_plus_a),
                coker("coker(1 + cof A)", &one_plus_cof),
                two(),
            ],
            0,
            &[1],
        ),
        DetClass::AtMostMinusTwo => assemble(
            &[ker("ker(1 + cof A)", &one_plus_cof), torsion_unit(), coker("coker(1 + A)", &one_plus_a)],
            &[ker("ker(1 + A)", &one_plus_a), coker("coker(1 + cof A)", &one_plus_cof), two()],
            1,
            &[1],
        ),
    }
}
