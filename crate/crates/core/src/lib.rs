//! Global-center analysis for the cubic family
//!
//! ```text
//! ẋ = y + 2a1·xy − a2(x² − y²) − (b2 + c2 + d2)x³ − (3b1 + c1 − d1)x²y + (3b2 − c2 − d2)xy²
//! ẏ = −x + a1(x² − y²) + 2a2·xy + (b1 + c1 + d1)x³ − (3b2 + c2 − d2)x²y
//!        + (−3b1 + c1 + d1)xy² + (b2 − c2 + d2)y³
//! ```
//!
//! The crate is layered bottom-up:
//!
//! - [`poly`]: exact bivariate polynomials over ℚ, univariate root isolation.
//! - [`compactify`]: Poincaré compactification charts and infinite equilibria.
//! - [`desing`]: characteristic directions, twists, vertical blow-ups, time rescaling.
//! - [`classify`]: hyperbolic and semi-hyperbolic equilibrium classification.
//! - [`family`]: the parameter family, center and global-center decision procedures.
//! - [`flow`]: numerical orbit integration and the empirical global-center verdict.
//! - [`portrait`]: deterministic SVG phase portraits on the Poincaré disc.

pub mod classify;
pub mod compactify;
pub mod desing;
pub mod error;
pub mod family;
pub mod flow;
pub mod poly;
pub mod portrait;

pub use error::{Error, Result};
pub use poly::{Poly2, Rational, Var, VectorField};
