//! Exact lattice computations for real del Pezzo surfaces of degree 1.
//!
//! The Picard lattice `Z^{1,8}` and its sublattice `K^perp = E8`, the eleven
//! real deformation classes with their eigenlattices `Λ`, the `Z/4`
//! quadratic function on real classes, signed sums over the second-layer
//! classes `-2K - v`, and the lattice side of wall-crossing. The [`report`]
//! module turns these into tables and a verification report.

#![allow(clippy::needless_range_loop)]

pub mod ade;
pub mod counting;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod model;
pub mod pin;
pub mod real_forms;
pub mod reference;
pub mod report;
pub mod wallcross;
