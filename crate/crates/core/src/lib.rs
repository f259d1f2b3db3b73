//! Symmetric periodic orbits of the planar three-body problem.
//!
//! The crate covers exact symmetry-group algebra ([`symmetry`]), the
//! classification predicates ([`classify`]), the spectral action functional
//! and its minimization ([`action`]), closed-form test paths ([`testpaths`])
//! and the collision-variation kernels ([`variation`]).

pub mod action;
pub mod classify;
pub mod error;
pub mod quad;
pub mod symmetry;
pub mod testpaths;
pub mod variation;

pub use error::{Error, Result};
pub use symmetry::{Configuration, GroupElement, Masses, O2Elem, Perm3, SymmetryGroup, Turn};
