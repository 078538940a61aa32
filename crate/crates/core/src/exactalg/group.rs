//! Finitely generated abelian groups and their elements.
//!
//! A group is `Z^free_rank ⊕ Z/d1 ⊕ … ⊕ Z/dk` with `d1 | d2 | … | dk`
//! and every `di ≥ 2`. Element coordinates list the free part first,
//! then one residue per torsion factor, reduced into `[0, di)`.
//!
//! This models the second cohomology of a closed oriented 3-manifold,
//! where the mod-2 reduction map identifies `H^2(·;F2)` with
//! `H^2(·;Z)/2` because the top integral cohomology is torsion-free;
//! the general universal-coefficients correction is out of scope.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("torsion factors must satisfy 2 <= d1 | d2 | ... (got {0})")]
    InvalidTorsionChain(String),
    #[error("element belongs to a different group")]
    GroupMismatch,
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },
}

/// `Z^free_rank ⊕ Z/d1 ⊕ … ⊕ Z/dk` with the invariant-factor chain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, GroupError> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(GroupError::InvalidTorsionChain(format!(
                    "factor {d} is below 2"
                )));
            }
            if i + 1 < torsion.len() && !(&torsion[i + 1] % d).is_zero() {
                return Err(GroupError::InvalidTorsionChain(format!(
                    "{} does not divide {}",
                    d,
                    torsion[i + 1]
                )));
            }
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FGAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// `Z^n`
    pub fn free(n: usize) -> Self {
        FGAbelianGroup {
            free_rank: n,
            torsion: Vec::new(),
        }
    }

    /// `Z/d`
    pub fn cyclic(d: u64) -> Self {
        assert!(d >= 2, "cyclic factor must be at least 2");
        FGAbelianGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(d)],
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of coordinates an element carries.
    pub fn coordinate_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// `|Hom(G, Z/2)| = 2^(free_rank + #even torsion factors)`.
    pub fn hom_count_to_z2(&self) -> BigInt {
        let evens = self.torsion.iter().filter(|d| (*d % 2u8).is_zero()).count();
        BigInt::one() << (self.free_rank + evens)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.coordinate_count()],
        }
    }

    /// Element with the given coordinates (free part first, then one
    /// residue per torsion factor; residues are reduced canonically).
    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement, GroupError> {
        if coords.len() != self.coordinate_count() {
            return Err(GroupError::CoordinateCount {
                expected: self.coordinate_count(),
                found: coords.len(),
            });
        }
        let mut coords = coords;
        for (i, d) in self.torsion.iter().enumerate() {
            let idx = self.free_rank + i;
            coords[idx] = coords[idx].mod_floor(d);
        }
        Ok(GroupElement {
            group: self.clone(),
            coords,
        })
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn check_owner(&self, e: &GroupElement) -> Result<(), GroupError> {
        if e.group != *self {
            return Err(GroupError::GroupMismatch);
        }
        Ok(())
    }

    /// Decide `e ∈ 2G`; when even, return the canonical witness `β`
    /// with `2β = e` (other witnesses differ by 2-torsion).
    pub fn is_even(&self, e: &GroupElement) -> Result<Option<GroupElement>, GroupError> {
        self.check_owner(e)?;
        let mut witness = Vec::with_capacity(self.coordinate_count());
        for i in 0..self.free_rank {
            let c = &e.coords[i];
            if c.is_odd() {
                return Ok(None);
            }
            witness.push(c / 2);
        }
        for (t, d) in self.torsion.iter().enumerate() {
            let c = &e.coords[self.free_rank + t];
            if d.is_odd() {
                // 2 is invertible mod d; inverse is (d+1)/2
                let half = (d + BigInt::one()) / 2;
                let prod: BigInt = c * half;
                witness.push(prod.mod_floor(d));
            } else if c.is_odd() {
                return Ok(None);
            } else {
                witness.push(c / 2);
            }
        }
        Ok(Some(GroupElement {
            group: self.clone(),
            coords: witness,
        }))
    }

    /// Image of `e` in `G/2G`. Zero exactly when `is_even` holds.
    pub fn mod2_reduction(&self, e: &GroupElement) -> Result<Mod2Class, GroupError> {
        self.check_owner(e)?;
        let mut coords = Vec::with_capacity(self.coordinate_count());
        for i in 0..self.free_rank {
            coords.push(e.coords[i].is_odd());
        }
        for (t, d) in self.torsion.iter().enumerate() {
            // 2(Z/d) = Z/d when d is odd, so that factor dies in G/2G
            if d.is_odd() {
                coords.push(false);
            } else {
                coords.push(e.coords[self.free_rank + t].is_odd());
            }
        }
        Ok(Mod2Class { coords })
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FGAbelianGroup {
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
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of an [`FGAbelianGroup`]; carries its owning group, and all
/// arithmetic refuses to mix groups.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    group: FGAbelianGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        self.group.element(coords)
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupElement {
        let coords = self.coords.iter().map(|c| -c).collect();
        self.group.element(coords).expect("same coordinate count")
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let coords = self.coords.iter().map(|c| c * k).collect();
        self.group.element(coords).expect("same coordinate count")
    }

    pub fn double(&self) -> GroupElement {
        self.scale(&BigInt::from(2))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.group)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Element of `G/2G`, presented on the generators of `G` (coordinates
/// over odd torsion factors are identically zero there).
#[derive(Clone, PartialEq, Eq)]
pub struct Mod2Class {
    coords: Vec<bool>,
}

impl Mod2Class {
    pub fn coords(&self) -> &[bool] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| !c)
    }
}

impl fmt::Debug for Mod2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mod2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .coords
            .iter()
            .map(|&c| if c { "1" } else { "0" })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torsion_chain_is_validated() {
        assert!(FGAbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(4)]).is_ok());
        assert!(FGAbelianGroup::new(1, vec![BigInt::from(1)]).is_err());
        assert!(FGAbelianGroup::new(0, vec![BigInt::from(4), BigInt::from(6)]).is_err());
    }

    #[test]
    fn torsion_coordinates_reduce() {
        let g = FGAbelianGroup::cyclic(4);
        let e = g.element_from_i64(&[7]).unwrap();
        assert_eq!(e.coords()[0], BigInt::from(3));
        let e = g.element_from_i64(&[-1]).unwrap();
        assert_eq!(e.coords()[0], BigInt::from(3));
    }

    #[test]
    fn even_in_free_group() {
        let g = FGAbelianGroup::free(1);
        let e = g.element_from_i64(&[4]).unwrap();
        let beta = g.is_even(&e).unwrap().expect("4 is even in Z");
        assert_eq!(beta, g.element_from_i64(&[2]).unwrap());
        assert_eq!(beta.double(), e);

        let odd = g.element_from_i64(&[3]).unwrap();
        assert!(g.is_even(&odd).unwrap().is_none());
    }

    #[test]
    fn two_torsion_blocks_evenness() {
        let g = FGAbelianGroup::cyclic(2);
        let e = g.element_from_i64(&[1]).unwrap();
        assert!(g.is_even(&e).unwrap().is_none());
    }

    #[test]
    fn odd_torsion_is_always_even() {
        let g = FGAbelianGroup::cyclic(5);
        for v in 0..5 {
            let e = g.element_from_i64(&[v]).unwrap();
            let beta = g.is_even(&e).unwrap().expect("2 invertible mod 5");
            assert_eq!(beta.double(), e);
        }
    }

    #[test]
    fn mixed_group_witness() {
        // Z/4 + Z, coordinates free-first: e = (6, 2) meaning 6 in Z, 2 in Z/4
        let g = FGAbelianGroup::new(1, vec![BigInt::from(4)]).unwrap();
        let e = g.element_from_i64(&[6, 2]).unwrap();
        let beta = g.is_even(&e).unwrap().expect("even");
        assert_eq!(beta, g.element_from_i64(&[3, 1]).unwrap());
        assert_eq!(beta.double(), e);
        // the other witness differs by the 2-torsion element (0, 2)
        let other = g.element_from_i64(&[3, 3]).unwrap();
        assert_eq!(other.double(), e);
    }

    #[test]
    fn mod2_reduction_matches_evenness() {
        let g = FGAbelianGroup::new(1, vec![BigInt::from(3), BigInt::from(12)]).unwrap();
        for coords in [[0, 0, 0], [4, 2, 6], [3, 1, 2], [2, 2, 7], [1, 0, 0]] {
            let e = g.element_from_i64(&coords).unwrap();
            let even = g.is_even(&e).unwrap();
            let red = g.mod2_reduction(&e).unwrap();
            assert_eq!(even.is_some(), red.is_zero(), "coords {coords:?}");
            if let Some(beta) = even {
                assert_eq!(beta.double(), e);
            }
        }
    }

    #[test]
    fn mod2_reduction_examples() {
        let z = FGAbelianGroup::free(1);
        assert!(z
            .mod2_reduction(&z.element_from_i64(&[4]).unwrap())
            .unwrap()
            .is_zero());
        assert!(!z
            .mod2_reduction(&z.element_from_i64(&[3]).unwrap())
            .unwrap()
            .is_zero());
        let z4 = FGAbelianGroup::cyclic(4);
        assert!(z4
            .mod2_reduction(&z4.element_from_i64(&[2]).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn cross_group_arithmetic_is_an_error() {
        let a = FGAbelianGroup::cyclic(4);
        let b = FGAbelianGroup::cyclic(8);
        let ea = a.element_from_i64(&[1]).unwrap();
        let eb = b.element_from_i64(&[1]).unwrap();
        assert_eq!(ea.add(&eb).unwrap_err(), GroupError::GroupMismatch);
        assert_eq!(b.is_even(&ea).unwrap_err(), GroupError::GroupMismatch);
        assert_eq!(
            b.mod2_reduction(&ea).unwrap_err(),
            GroupError::GroupMismatch
        );
    }

    #[test]
    fn hom_count() {
        let g = FGAbelianGroup::new(1, vec![BigInt::from(3), BigInt::from(12)]).unwrap();
        // Z contributes 2, Z/3 contributes 1, Z/12 contributes 2
        assert_eq!(g.hom_count_to_z2(), BigInt::from(4));
        assert_eq!(FGAbelianGroup::trivial().hom_count_to_z2(), BigInt::one());
    }
}
