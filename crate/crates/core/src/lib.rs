//! Symmetry reduction of harmonic generalised polarizability tensors (HGPTs).
//!
//! The crate computes, for a finite group of orthogonal 3×3 matrices, the
//! subspace of symmetric products of harmonic polynomials that the group
//! fixes, and from it the independent HGPT coefficients. Supporting pieces:
//! exact polynomial arithmetic ([`polyalg`]), harmonic bases and solid
//! harmonics ([`harmonics`]), point groups ([`symgroups`]), averaging
//! projectors and Molien series ([`invariants`]) and HGPT matrix algebra
//! ([`hgpt`]).

pub mod field;
pub mod linalg;
pub mod harmonics;
pub mod hgpt;
pub mod invariants;
pub mod polyalg;
pub mod report;
pub mod symgroups;

pub use field::{Field, Rational};
