//! Exact computation of simplicial resolutions for differential graded
//! algebras, built over the Barratt-Eccles operad.
//!
//! The crate is organized bottom-up:
//! - [`scalar`], [`linear`], [`homology`]: exact coefficients, graded
//!   linear combinations, chain complexes and homology ranks;
//! - [`perm`], [`simplex`]: symmetric groups with operadic substitution,
//!   normalized chains and cochains of standard simplices;
//! - [`barratt_eccles`], [`surjection`]: the simplicial operad of
//!   permutation tuples, its surjection-operad quotient by table
//!   reduction, and the interval-cut coaction on simplex chains;
//! - [`free_algebra`], [`presentation`]: free algebras over the operad on
//!   a graded module, and finitely presented commutative input algebras;
//! - [`cotriple`], [`framing`], [`realization`]: level trees of the
//!   iterated free construction, the cosimplicial framing of free
//!   algebras, and the realization of the resulting simplicial resolution
//!   as a quasi-free model whose homology is compared against the input.

pub mod error;
pub mod scalar;
pub mod linear;
pub mod homology;
pub mod perm;
pub mod simplex;
pub mod barratt_eccles;
pub mod surjection;
pub mod free_algebra;
pub mod presentation;
pub mod cotriple;
pub mod framing;
pub mod realization;

pub use error::{Error, Result};
