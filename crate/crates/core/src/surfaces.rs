//! Mod-2 pairing formulas on closed surfaces.
//!
//! A closed surface enters by its classification data alone: orientable
//! of genus `g`, or non-orientable as a connected sum of `h` projective
//! planes. For a surface embedded in a closed oriented 3-manifold
//! carrying a combing `v`, the pairing of `w(F_v)` with the fundamental
//! class splits into two Stiefel-Whitney-style terms which this module
//! evaluates in closed form; their sum vanishes identically, which is
//! the computational face of the vanishing of `w_2`.

use std::fmt;
use std::str::FromStr;

/// Closed surface given by classification data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedSurface {
    /// Orientable of genus `g ≥ 0`.
    Orientable { genus: u32 },
    /// Connected sum of `h ≥ 1` projective planes.
    NonOrientable { crosscaps: u32 },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("a non-orientable surface needs at least one crosscap")]
    ZeroCrosscaps,
    #[error("surface token must be o<genus> or n<crosscaps>, got {0:?}")]
    BadToken(String),
}

/// Value of the two pairing summands, each in F2 (represented 0/1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingTerms {
    /// `⟨w(TΣ), [Σ]⟩ = χ(Σ) mod 2`
    pub tangent: u8,
    /// `⟨w(det TΣ) ∪ w(ν_Σ), [Σ]⟩`: 0 for orientable Σ, `h mod 2` otherwise
    pub twisted: u8,
}

impl ClosedSurface {
    pub fn orientable(genus: u32) -> Self {
        ClosedSurface::Orientable { genus }
    }

    pub fn non_orientable(crosscaps: u32) -> Result<Self, SurfaceError> {
        if crosscaps == 0 {
            return Err(SurfaceError::ZeroCrosscaps);
        }
        Ok(ClosedSurface::NonOrientable { crosscaps })
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, ClosedSurface::Orientable { .. })
    }

    /// `χ = 2 − 2g` (orientable) or `χ = 2 − h` (non-orientable).
    pub fn euler_characteristic(&self) -> i64 {
        match *self {
            ClosedSurface::Orientable { genus } => 2 - 2 * i64::from(genus),
            ClosedSurface::NonOrientable { crosscaps } => 2 - i64::from(crosscaps),
        }
    }

    /// The two summands of the restriction pairing
    /// `⟨w(F_v|_Σ), [Σ]⟩ = ⟨w(TΣ), [Σ]⟩ + ⟨w(det TΣ) ∪ w(ν_Σ), [Σ]⟩`.
    ///
    /// For orientable Σ the determinant line is trivial so the second
    /// term dies; for non-orientable Σ the normal line of the embedding
    /// is isomorphic to the determinant line, giving `h mod 2`.
    pub fn pairing_terms(&self) -> PairingTerms {
        let tangent = (self.euler_characteristic().rem_euclid(2)) as u8;
        let twisted = match *self {
            ClosedSurface::Orientable { .. } => 0,
            ClosedSurface::NonOrientable { crosscaps } => (crosscaps % 2) as u8,
        };
        PairingTerms { tangent, twisted }
    }

    /// `⟨w(F_v), [Σ]⟩`, the sum of the two pairing terms. Identically
    /// zero on every closed surface.
    pub fn pairing_w_fv(&self) -> u8 {
        let t = self.pairing_terms();
        (t.tangent + t.twisted) % 2
    }

    /// CLI token: `o<g>` or `n<h>`.
    pub fn to_token(&self) -> String {
        match *self {
            ClosedSurface::Orientable { genus } => format!("o{genus}"),
            ClosedSurface::NonOrientable { crosscaps } => format!("n{crosscaps}"),
        }
    }
}

impl FromStr for ClosedSurface {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, SurfaceError> {
        let bad = || SurfaceError::BadToken(s.to_string());
        let (kind, rest) = s.split_at_checked(1).ok_or_else(bad)?;
        let count: u32 = rest.parse().map_err(|_| bad())?;
        match kind {
            "o" => Ok(ClosedSurface::orientable(count)),
            "n" => ClosedSurface::non_orientable(count).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ClosedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token())
    }
}
