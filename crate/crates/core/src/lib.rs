//! Exact-arithmetic calculus for 3-manifold parallelizability questions.
//!
//! The crate is organized around six subsystems:
//!
//! - [`exactalg`] — integer and F2 linear algebra: Smith normal form,
//!   system solving, and finitely generated abelian groups with an
//!   evenness test (`e = 2β`).
//! - [`combing`] — a symbolic ledger of combings of a closed oriented
//!   3-manifold, tracking Euler classes, comparison classes, and
//!   Pontryagin surgeries, with a parallelizability decision.
//! - [`surfaces`] — mod-2 pairing formulas for closed surfaces given by
//!   their classification data.
//! - [`surgery`] — Kirby-move calculus on framed-link linking matrices:
//!   blow-ups, blow-downs, handle slides, characteristic sublinks, spin
//!   structure counts, and an evenization algorithm that returns a
//!   verified move script.
//! - [`heegaard`] — the F2 meridian-twist linear system deciding which
//!   Dehn twists make all induced framings even.
//! - [`linkgeom`] — exact geometry of closed polygonal curves in R^3:
//!   linking numbers by signed crossings, pushoffs, self-linking, and
//!   the framing-extension parity predicate, with a floating-point
//!   Gauss-integral oracle.
//!
//! All integer arithmetic is arbitrary precision and all geometric
//! predicates are evaluated over exact rationals; floating point appears
//! only in the Gauss oracle.

pub mod combing;
pub mod exactalg;
pub mod heegaard;
pub mod linkgeom;
pub mod surfaces;
pub mod surgery;
pub(crate) mod textfmt;

pub use textfmt::ParseError;
