//! K-theory of the crossed-product algebras of torus endomorphisms and
//! affine maps, in dimensions 1 to 3.

mod affine;
mod mu;
mod ordered;
mod presentation;
mod sixterm;
mod tables;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{kernel_lattice, Cokernel, FgAbelianGroup, IntMatrix};

pub use affine::{k_groups_affine, k_groups_endomorphism};
pub use mu::{compute_mu, MuPair};
pub use ordered::{trace_on_k0_minimal, OrderedK0Report};
pub use presentation::{presentation, AlgebraPresentation, Relation};
pub use sixterm::generic_k_groups;
pub use tables::table_k_groups;

/// One direct summand of a K-group as it appears in the reported decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub name: String,
    pub group: FgAbelianGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroup {
    pub summands: Vec<Summand>,
    /// The direct sum in invariant-factor form.
    pub total: FgAbelianGroup,
}

/// Position of the class of the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitClass {
    pub summand: usize,
    pub summand_name: String,
    /// Coordinates inside the summand.
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub value: Vec<BigInt>,
    /// Coordinates inside `total` of K0.
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub canonical: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroups {
    pub k0: KGroup,
    pub k1: KGroup,
    pub unit: UnitClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTheoryReport {
    pub n: usize,
    pub case_label: String,
    pub groups: Option<KGroups>,
    pub simple: bool,
    pub purely_infinite: bool,
    pub trace_order: Option<OrderedK0Report>,
    pub notes: Vec<String>,
}

impl KTheoryReport {
    pub fn k0(&self) -> Option<&FgAbelianGroup> {
        self.groups.as_ref().map(|g| &g.k0.total)
    }

    pub fn k1(&self) -> Option<&FgAbelianGroup> {
        self.groups.as_ref().map(|g| &g.k1.total)
    }
}

/// A summand given by a presentation: generators are the rows of `relations`.
#[derive(Debug, Clone)]
pub(crate) struct Piece {
    name: String,
    relations: IntMatrix,
}

impl Piece {
    pub(crate) fn coker(name: impl Into<String>, m: IntMatrix) -> Piece {
        Piece { name: name.into(), relations: m }
    }

    pub(crate) fn cyclic(name: impl Into<String>, d: BigInt) -> Piece {
        Piece { name: name.into(), relations: IntMatrix::diagonal([d]) }
    }

    pub(crate) fn free(name: impl Into<String>, rank: usize) -> Piece {
        // the trivial group is presented as Z/Z
        let relations = if rank == 0 { IntMatrix::identity(1) } else { IntMatrix::zeros(rank, 1) };
        Piece { name: name.into(), relations }
    }

    /// The kernel of `m`, which is free of rank `dim ker m`.
    pub(crate) fn kernel(name: impl Into<String>, m: &IntMatrix) -> Piece {
        Piece::free(name, kernel_lattice(m).len())
    }

    fn generators(&self) -> usize {
        self.relations.rows()
    }

    fn group(&self) -> FgAbelianGroup {
        Cokernel::of(&self.relations).group().clone()
    }
}

fn block_diag(pieces: &[Piece]) -> IntMatrix {
    let mut it = pieces.iter();
    let first = it.next().expect("at least one summand").relations.clone();
    it.fold(first, |acc, p| IntMatrix::block_diag(&acc, &p.relations))
}

pub(crate) fn assemble_group(pieces: &[Piece]) -> KGroup {
    KGroup {
        summands: pieces.iter().map(|p| Summand { name: p.name.clone(), group: p.group() }).collect(),
        total: Cokernel::of(&block_diag(pieces)).group().clone(),
    }
}

/// Assembles K0 and K1 with the unit given as a generator vector of one K0 piece.
pub(crate) fn assemble(k0: &[Piece], k1: &[Piece], unit_piece: usize, unit: &[i64]) -> Result<KGroups> {
    let piece = &k0[unit_piece];
    let unit: Vec<BigInt> = unit.iter().map(|&x| BigInt::from(x)).collect();
    let value = Cokernel::of(&piece.relations).canonical_coords(&unit)?;
    let mut full = Vec::new();
    for (i, p) in k0.iter().enumerate() {
        if i == unit_piece {
            full.extend(unit.iter().cloned());
        } else {
            full.extend(std::iter::repeat_n(BigInt::from(0), p.generators()));
        }
    }
    let canonical = Cokernel::of(&block_diag(k0)).canonical_coords(&full)?;
    Ok(KGroups {
        k0: assemble_group(k0),
        k1: assemble_group(k1),
        unit: UnitClass { summand: unit_piece, summand_name: piece.name.clone(), value, canonical },
    })
}
