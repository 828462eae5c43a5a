//! Isomorphism of marked groups `(G, g)`: finitely generated abelian groups
//! with a distinguished element.
//!
//! Two elements of the same group lie in one automorphism orbit exactly when
//! they share the content of their free part (up to sign) and, at every prime
//! `p`, the sequence of `p`-heights of `p^j·g`. The decision below computes
//! these invariants; it gives up only when a torsion modulus cannot be
//! factored by trial division.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::FgAbelianGroup;

/// Trial-division limit for factoring torsion moduli.
pub const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MarkedVerdict {
    Isomorphic,
    NotIsomorphic,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedDecision {
    pub verdict: MarkedVerdict,
    pub reasons: Vec<String>,
}

/// Height of an element at a prime; `None` stands for infinite height.
pub type Height = Option<u64>;

/// Complete orbit invariant of an element under the automorphism group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedInvariant {
    /// Content of the free coordinates, zero for torsion elements.
    pub content: BigInt,
    /// Height sequences `ht_p(p^j·g)`, `j = 0..=e_p`, for primes dividing the torsion.
    pub heights: BTreeMap<BigInt, Vec<Height>>,
}

/// Distinct prime factors, or `None` if some cofactor is out of reach of trial division.
pub fn prime_factors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut rem = n.abs();
    let mut out = Vec::new();
    if rem.is_zero() {
        return Some(out);
    }
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb > rem {
            break;
        }
        if rem.is_multiple_of(&pb) {
            out.push(pb.clone());
            while rem.is_multiple_of(&pb) {
                rem /= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rem.is_one() {
        return Some(out);
    }
    let limit = BigInt::from(TRIAL_DIVISION_LIMIT);
    if rem <= &limit * &limit || BigInt::from(p) * BigInt::from(p) > rem {
        out.push(rem);
        out.sort();
        return Some(out);
    }
    None
}

fn valuation(x: &BigInt, p: &BigInt) -> u64 {
    let mut x = x.abs();
    let mut v = 0;
    while !x.is_zero() && x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

fn min_height(a: Height, b: Height) -> Height {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

/// Orbit invariant of `g` in `G`; `None` when factoring the torsion fails.
pub fn marked_invariant(group: &FgAbelianGroup, g: &[BigInt]) -> Result<Option<MarkedInvariant>> {
    check_input(group, g)?;
    let content = g[..group.free_rank].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut heights = BTreeMap::new();
    let Some(top) = group.torsion.last() else {
        return Ok(Some(MarkedInvariant { content, heights }));
    };
    let Some(primes) = prime_factors(top) else {
        return Ok(None);
    };
    let torsion = &g[group.free_rank..];
    for p in primes {
        let exps: Vec<u64> = group.torsion.iter().map(|d| valuation(d, &p)).collect();
        let max_e = exps.iter().copied().max().unwrap_or(0);
        let base: Option<u64> = (!content.is_zero()).then(|| valuation(&content, &p));
        let mut seq = Vec::with_capacity(max_e as usize + 1);
        for j in 0..=max_e {
            let mut h: Height = None;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pe = p.pow(e as u32);
                let x = (&torsion[i] * p.pow(j as u32)).mod_floor(&pe);
                let hx = if x.is_zero() { None } else { Some(valuation(&x, &p)) };
                h = min_height(h, hx);
            }
            h = min_height(h, base.map(|b| b + j));
            seq.push(h);
        }
        heights.insert(p, seq);
    }
    Ok(Some(MarkedInvariant { content, heights }))
}

fn check_input(group: &FgAbelianGroup, g: &[BigInt]) -> Result<()> {
    group.check_canonical()?;
    if !group.is_reduced(g) {
        return Err(Error::Argument(format!(
            "element {g:?} is not in reduced coordinates for {group}"
        )));
    }
    Ok(())
}

/// Decides whether some isomorphism `G → H` carries `g` to `h`.
pub fn marked_group_iso(
    g_group: &FgAbelianGroup,
    g: &[BigInt],
    h_group: &FgAbelianGroup,
    h: &[BigInt],
) -> Result<MarkedDecision> {
    check_input(g_group, g)?;
    check_input(h_group, h)?;
    let mut reasons = Vec::new();
    let no = |mut reasons: Vec<String>, why: String| {
        reasons.push(why);
        Ok(MarkedDecision { verdict: MarkedVerdict::NotIsomorphic, reasons })
    };
    if g_group != h_group {
        return no(reasons, format!("groups differ: {g_group} vs {h_group}"));
    }
    reasons.push(format!("groups agree: {g_group}"));

    let (og, oh) = (g_group.element_order(g), h_group.element_order(h));
    if og != oh {
        let show = |o: &Option<BigInt>| o.as_ref().map_or("infinite".to_string(), ToString::to_string);
        return no(reasons, format!("element orders differ: {} vs {}", show(&og), show(&oh)));
    }
    reasons.push(format!(
        "element orders agree: {}",
        og.as_ref().map_or("infinite".to_string(), ToString::to_string)
    ));

    let (Some(ig), Some(ih)) = (marked_invariant(g_group, g)?, marked_invariant(h_group, h)?) else {
        reasons.push("torsion modulus could not be factored by trial division".into());
        return Ok(MarkedDecision { verdict: MarkedVerdict::Undecided, reasons });
    };
    if ig.content != ih.content {
        return no(reasons, format!("free parts have different content: {} vs {}", ig.content, ih.content));
    }
    for (p, seq) in &ig.heights {
        if ih.heights.get(p) != Some(seq) {
            return no(reasons, format!("{p}-height sequences differ"));
        }
    }
    reasons.push("content and height sequences agree at every prime".into());
    Ok(MarkedDecision { verdict: MarkedVerdict::Isomorphic, reasons })
}

/// Convenience for small examples: elements as `i64` coordinates.
pub fn marked_group_iso_i64(
    g_group: &FgAbelianGroup,
    g: &[i64],
    h_group: &FgAbelianGroup,
    h: &[i64],
) -> Result<MarkedVerdict> {
    let conv = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    Ok(marked_group_iso(g_group, &conv(g), h_group, &conv(h))?.verdict)
}

/// Orbit enumeration oracle for finite groups and for `Z ⊕ T`, used in tests.
pub mod oracle {
    use super::*;
    use std::collections::{HashMap, VecDeque};

    fn moduli(group: &FgAbelianGroup) -> Vec<i64> {
        group.torsion.iter().map(|d| d.to_i64().expect("small modulus")).collect()
    }

    /// Generators of the automorphism group of `⊕ Z_{d_i}` acting on coordinate vectors.
    pub type Automorphism = Box<dyn Fn(&[i64]) -> Vec<i64>>;

    pub fn elementary_automorphisms(d: &[i64]) -> Vec<Automorphism> {
        let mut gens: Vec<Automorphism> = Vec::new();
        let d = d.to_vec();
        for i in 0..d.len() {
            for u in 2..d[i] {
                if u.gcd(&d[i]) == 1 {
                    let d = d.clone();
                    gens.push(Box::new(move |x: &[i64]| {
                        let mut y = x.to_vec();
                        y[i] = (y[i] * u).rem_euclid(d[i]);
                        y
                    }));
                }
            }
            for j in 0..d.len() {
                if i == j {
                    continue;
                }
                let step = d[j] / d[i].gcd(&d[j]);
                let d = d.clone();
                gens.push(Box::new(move |x: &[i64]| {
                    let mut y = x.to_vec();
                    y[j] = (y[j] + step * x[i]).rem_euclid(d[j]);
                    y
                }));
            }
        }
        gens
    }

    pub fn all_elements(d: &[i64]) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &m in d {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Orbit labels of every element of a finite group under the generated automorphisms.
    pub fn torsion_orbits(group: &FgAbelianGroup) -> HashMap<Vec<i64>, usize> {
        let d = moduli(group);
        let gens = elementary_automorphisms(&d);
        let mut label = HashMap::new();
        let mut next = 0;
        for start in all_elements(&d) {
            if label.contains_key(&start) {
                continue;
            }
            let mut queue = VecDeque::from([start.clone()]);
            label.insert(start, next);
            while let Some(x) = queue.pop_front() {
                for f in &gens {
                    let y = f(&x);
                    if !label.contains_key(&y) {
                        label.insert(y.clone(), next);
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Every automorphism of a finite group, as images of the standard generators.
    /// Returns `None` when the search space exceeds `limit`.
    pub fn all_automorphisms(group: &FgAbelianGroup, limit: usize) -> Option<Vec<Vec<Vec<i64>>>> {
        let d = moduli(group);
        let elems = all_elements(&d);
        let order = |x: &[i64]| -> i64 {
            x.iter().zip(&d).fold(1i64, |acc, (&c, &m)| acc.lcm(&(m / c.gcd(&m))))
        };
        // candidate images of generator i: elements whose order divides d_i
        let cands: Vec<Vec<Vec<i64>>> = d
            .iter()
            .map(|&m| elems.iter().filter(|x| m % order(x) == 0).cloned().collect())
            .collect();
        let space: usize = cands.iter().map(Vec::len).try_fold(1usize, |a, b| a.checked_mul(b))?;
        if space > limit {
            return None;
        }
        let size = elems.len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; d.len()];
        loop {
            let images: Vec<Vec<i64>> = idx.iter().enumerate().map(|(i, &k)| cands[i][k].clone()).collect();
            let apply = |x: &[i64]| -> Vec<i64> {
                let mut y = vec![0i64; d.len()];
                for (i, &c) in x.iter().enumerate() {
                    for (k, yk) in y.iter_mut().enumerate() {
                        *yk = (*yk + c * images[i][k]).rem_euclid(d[k]);
                    }
                }
                y
            };
            let image: std::collections::HashSet<Vec<i64>> = elems.iter().map(|x| apply(x)).collect();
            if image.len() == size {
                out.push(images.clone());
            }
            let mut i = 0;
            loop {
                if i == d.len() {
                    return Some(out);
                }
                idx[i] += 1;
                if idx[i] < cands[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    /// Orbit of `(c, t)` in `Z ⊕ T`: pairs `(±c, σ(t) + c·s)`.
    pub fn mixed_orbit(torsion: &FgAbelianGroup, c: i64, t: &[i64]) -> std::collections::HashSet<(i64, Vec<i64>)> {
        let d = moduli(torsion);
        let gens = elementary_automorphisms(&d);
        let mut seen = std::collections::HashSet::new();
        let mut queue = VecDeque::from([(c, t.to_vec())]);
        seen.insert((c, t.to_vec()));
        while let Some((a, x)) = queue.pop_front() {
            let mut next: Vec<(i64, Vec<i64>)> = gens.iter().map(|f| (a, f(&x))).collect();
            next.push((-a, x.clone()));
            for i in 0..d.len() {
                let mut y = x.clone();
                y[i] = (y[i] + a).rem_euclid(d[i]);
                next.push((a, y));
            }
            for s in next {
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        seen
    }
}
