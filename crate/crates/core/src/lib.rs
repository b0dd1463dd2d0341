//! Projected homogeneous Ricci flow on flag manifolds with three isotropy summands.
//!
//! The pipeline runs from exact field derivation ([`flowgen`]) over rational
//! polynomials ([`polyalg`]) to numerical analysis of the planar field:
//! equilibria, orbits, basins and Gromov-Hausdorff collapse targets.

pub mod catalog;
pub mod dynamics;
pub mod equilibria;
pub mod flowgen;
pub mod ghlimit;
pub mod polyalg;
pub mod scalar;

pub use polyalg::{Poly, Rational};
pub use scalar::Real;

/// Exact polynomial.
pub type QPoly = Poly<Rational>;
/// Double precision polynomial.
pub type FPoly = Poly<f64>;
