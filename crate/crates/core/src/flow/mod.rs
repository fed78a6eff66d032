//! Numerical orbit analysis: adaptive integration, Poincaré return maps,
//! escape detection, first-integral drift and the empirical global-center
//! verdict.
//!
//! Everything here works in `f64`; the only exact part is the scan for
//! finite equilibria other than the origin ([`equilibria`]).

pub mod equilibria;
pub mod first_integral;
mod infinity;
pub mod integrator;
pub mod verdict;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use equilibria::{scan_finite_equilibria, EquilibriumScan};
pub use first_integral::{first_integral_check, lie_derivative};
pub use integrator::{integrate, CompiledField, Termination, Trajectory};
pub use verdict::{
    default_radii, global_center_verdict, return_map_verdict, sample_points, verify_field, GlobalTag, GlobalVerdict,
    OrbitVerdict, Sample, Witness,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_time: f64,
    pub escape_radius: f64,
    pub section_closure_tol: f64,
    /// Return maps follow orbits past `escape_radius` through the charts at
    /// infinity and call them escaping once `ln r` exceeds this.
    pub infinity_depth: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_time: 200.0,
            escape_radius: 1e3,
            section_closure_tol: 1e-6,
            infinity_depth: 1e12,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("max_time", self.max_time),
            ("escape_radius", self.escape_radius),
            ("section_closure_tol", self.section_closure_tol),
            ("infinity_depth", self.infinity_depth),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parse(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}
