use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^free_rank ⊕ Z_{d1} ⊕ ... ⊕ Z_{dk}` in
/// invariant-factor form. Elements are written as coordinate vectors
/// `[free..., torsion...]` with torsion coordinates reduced into `[0, d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    /// Validating constructor for already canonical data.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let g = FgAbelianGroup { free_rank, torsion };
        g.check_canonical()?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        FgAbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonical form of `⊕ Z/m_i`, where a modulus of 0 stands for `Z`.
    pub fn from_cyclic<T: Into<BigInt>>(moduli: impl IntoIterator<Item = T>) -> Self {
        CyclicSum::new(moduli.into_iter().map(Into::into).collect()).group().clone()
    }

    pub fn check_canonical(&self) -> Result<()> {
        for d in &self.torsion {
            if d <= &BigInt::one() {
                return Err(Error::Argument(format!("torsion modulus {d} must be at least 2")));
            }
        }
        for w in self.torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::Argument(format!(
                    "torsion moduli {} and {} break the divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let moduli = std::iter::repeat_n(BigInt::zero(), self.free_rank + other.free_rank)
            .chain(self.torsion.iter().cloned())
            .chain(other.torsion.iter().cloned());
        FgAbelianGroup::from_cyclic(moduli)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of coordinates of an element.
    pub fn arity(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.arity()]
    }

    /// Reduces torsion coordinates into `[0, d_i)`.
    pub fn reduce(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.arity() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, group needs {}",
                x.len(),
                self.arity()
            )));
        }
        let mut out = x.to_vec();
        for (i, d) in self.torsion.iter().enumerate() {
            out[self.free_rank + i] = out[self.free_rank + i].mod_floor(d);
        }
        Ok(out)
    }

    pub fn is_reduced(&self, x: &[BigInt]) -> bool {
        x.len() == self.arity()
            && self
                .torsion
                .iter()
                .enumerate()
                .all(|(i, d)| !x[self.free_rank + i].is_negative() && &x[self.free_rank + i] < d)
    }

    /// Order of an element, `None` when it has infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        if x[..self.free_rank].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut ord = BigInt::one();
        for (i, d) in self.torsion.iter().enumerate() {
            let c = &x[self.free_rank + i];
            ord = ord.lcm(&(d / c.gcd(d)));
        }
        Some(ord)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            parts.push(if run == 1 { format!("Z_{d}") } else { format!("Z_{d}^{run}") });
            i += run;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// The quotient `Z^m / B·Z^k` together with the coordinate change onto its
/// canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cokernel {
    group: FgAbelianGroup,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// SNF positions that survive as torsion coordinates, in order.
    torsion_rows: Vec<usize>,
    /// SNF positions that are free coordinates.
    free_rows: Vec<usize>,
}

impl Cokernel {
    pub fn of(b: &IntMatrix) -> Cokernel {
        let s = smith_normal_form(b);
        let rank = s.rank();
        let torsion_rows: Vec<usize> = (0..rank).filter(|&i| !s.invariant_factors[i].is_one()).collect();
        let free_rows: Vec<usize> = (rank..b.rows()).collect();
        let group = FgAbelianGroup {
            free_rank: free_rows.len(),
            torsion: torsion_rows.iter().map(|&i| s.invariant_factors[i].clone()).collect(),
        };
        Cokernel { group, u: s.u, u_inv: s.u_inv, torsion_rows, free_rows }
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Canonical coordinates of the class of `x ∈ Z^m`.
    pub fn canonical_coords(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self.u.mul_vec(x)?;
        let mut out: Vec<BigInt> = self.free_rows.iter().map(|&i| y[i].clone()).collect();
        for (k, &i) in self.torsion_rows.iter().enumerate() {
            out.push(y[i].mod_floor(&self.group.torsion[k]));
        }
        Ok(out)
    }

    /// A representative in `Z^m` of an element given in canonical coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        if coords.len() != self.group.arity() {
            return Err(Error::Dimension("coordinate count mismatch".into()));
        }
        let mut y = vec![BigInt::zero(); self.u.rows()];
        for (k, &i) in self.free_rows.iter().enumerate() {
            y[i] = coords[k].clone();
        }
        for (k, &i) in self.torsion_rows.iter().enumerate() {
            y[i] = coords[self.free_rows.len() + k].clone();
        }
        self.u_inv.mul_vec(&y)
    }
}

/// Direct sum of cyclic groups `Z/m_i` (0 meaning `Z`), with the map into
/// canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSum {
    moduli: Vec<BigInt>,
    coker: Cokernel,
}

impl CyclicSum {
    pub fn new(moduli: Vec<BigInt>) -> CyclicSum {
        // an empty sum is presented as Z/Z
        let m = if moduli.is_empty() {
            IntMatrix::identity(1)
        } else {
            IntMatrix::diagonal(moduli.iter().map(Signed::abs))
        };
        CyclicSum { coker: Cokernel::of(&m), moduli }
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    pub fn group(&self) -> &FgAbelianGroup {
        self.coker.group()
    }

    pub fn canonical_coords(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if self.moduli.is_empty() {
            return Ok(Vec::new());
        }
        self.coker.canonical_coords(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(free: usize, torsion: &[i64]) -> FgAbelianGroup {
        FgAbelianGroup::new(free, torsion.iter().map(|&d| BigInt::from(d)).collect()).unwrap()
    }

    #[test]
    fn canonical_form_of_cyclic_sums() {
        assert_eq!(FgAbelianGroup::from_cyclic([2, 3]), g(0, &[6]));
        assert_eq!(FgAbelianGroup::from_cyclic([0, 4, 1, 6]), g(1, &[2, 12]));
        assert_eq!(FgAbelianGroup::from_cyclic(Vec::<i64>::new()), FgAbelianGroup::trivial());
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(4), BigInt::from(6)]).is_err());
        assert!(FgAbelianGroup::new(0, vec![BigInt::from(1)]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(g(1, &[3, 3, 3]).to_string(), "Z ⊕ Z_3^3");
        assert_eq!(g(2, &[]).to_string(), "Z^2");
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn cokernel_coordinates_round_trip() {
        let c = Cokernel::of(&IntMatrix::from_i64(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 0]]));
        assert_eq!(c.group(), &g(1, &[6]));
        let x: Vec<BigInt> = [1, 1, 5].iter().map(|&v| BigInt::from(v)).collect();
        let coords = c.canonical_coords(&x).unwrap();
        let back = c.lift(&coords).unwrap();
        assert_eq!(c.canonical_coords(&back).unwrap(), coords);
        assert_eq!(c.group().element_order(&coords), None);
        let t = c.canonical_coords(&[BigInt::from(1), BigInt::from(1), BigInt::zero()]).unwrap();
        assert_eq!(c.group().element_order(&t), Some(BigInt::from(6)));
    }

    #[test]
    fn cyclic_sum_maps_generators() {
        let s = CyclicSum::new(vec![BigInt::from(2), BigInt::from(3)]);
        let one = BigInt::one();
        let x = s.canonical_coords(&[one.clone(), one]).unwrap();
        assert_eq!(s.group().element_order(&x), Some(BigInt::from(6)));
    }
}
