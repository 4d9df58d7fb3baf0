//! Computational convex geometry for sharp moduli of continuity.
//!
//! The engine represents bounded open convex bodies, computes the polar
//! volume `f(a) = |(K - a)*|` exactly for polytopes and by spherical
//! quadrature for smooth bodies, and maximizes `f(a)^{-1/n}` over
//! distance-to-boundary shells to produce the sharp modulus curve
//! `omega(delta)` together with its section-polar sandwich bounds.
//! Closed-form oracles for balls, ellipsoids, parabolic and power-law
//! domains back the verification suites.

pub mod body;
pub mod cone;
pub mod error;
pub mod fitting;
pub mod flatspot;
pub mod linalg;
pub mod lp;
pub mod modulus;
pub mod oracles;
pub mod polytope;
pub mod quad;
pub mod rng;
pub mod section;
pub mod verify;

pub use body::ConvexBody;
pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use polytope::{HPolytope, VPolytope};
