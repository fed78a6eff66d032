use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::equilibria::{scan_finite_equilibria, EquilibriumScan};
use super::integrator::{drive, single_step, AtEscape, CompiledField, Control, Step, Termination};
use super::IntegratorConfig;
use crate::compactify::infinite_equilibria;
use crate::family::{build_system, center_cases, FamilyParams};
use crate::poly::VectorField;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OrbitVerdict {
    Periodic { period: f64, closure_error: f64 },
    Escaping { exit_time: f64 },
    Inconclusive { reason: String },
}

impl OrbitVerdict {
    pub fn is_periodic(&self) -> bool {
        matches!(self, OrbitVerdict::Periodic { .. })
    }

    pub fn is_escaping(&self) -> bool {
        matches!(self, OrbitVerdict::Escaping { .. })
    }
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Bisection on the Hermite interpolant of `step` for the zero of
/// `cross(d, z(t))`, then two Newton corrections on exact single steps.
fn locate_crossing(field: &CompiledField, step: &Step, d: [f64; 2]) -> (f64, [f64; 2]) {
    let g = |t: f64| cross(d, step.hermite(t));
    let (mut lo, mut hi) = (step.t0, step.t1);
    let g_lo = g(lo);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == (g_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    let mut z = single_step(field, step.y0, t - step.t0);
    for _ in 0..2 {
        let rate = cross(d, field.eval(z));
        if rate == 0.0 {
            break;
        }
        t -= cross(d, z) / rate;
        z = single_step(field, step.y0, t - step.t0);
    }
    (t, z)
}

pub(crate) fn return_map_compiled(field: &CompiledField, x0: [f64; 2], cfg: &IntegratorConfig) -> OrbitVerdict {
    let r0 = (x0[0] * x0[0] + x0[1] * x0[1]).sqrt();
    if r0 == 0.0 {
        return OrbitVerdict::Inconclusive {
            reason: "start point is the origin".into(),
        };
    }
    let d = [x0[0] / r0, x0[1] / r0];
    let f0 = field.eval(x0);
    let speed = (f0[0] * f0[0] + f0[1] * f0[1]).sqrt();
    let c0 = cross(x0, f0);
    if c0.abs() <= 1e-12 * r0 * speed || speed == 0.0 {
        return OrbitVerdict::Inconclusive {
            reason: "start point is not transversal to the section".into(),
        };
    }
    let sigma = c0.signum();
    let target = 2.0 * PI * sigma;
    let mut phi = 0.0f64;
    let mut closed: Option<(f64, f64)> = None;
    let mut best_miss = f64::INFINITY;
    let mut missed = false;
    let outcome = drive(field, x0, cfg, cfg.max_time, AtEscape::Continue, |step| {
        let next = phi + step.sweep;
        let before = sigma * (phi - target);
        let after = sigma * (next - target);
        if !missed && before < 0.0 && after >= 0.0 && step.at_infinity {
            // the ray was crossed beyond the escape radius
            missed = true;
        } else if !missed && before < 0.0 && after >= 0.0 {
            let (t, z) = locate_crossing(field, step, d);
            let err = ((z[0] - x0[0]).powi(2) + (z[1] - x0[1]).powi(2)).sqrt();
            if err < cfg.section_closure_tol {
                closed = Some((t, err));
                return Control::Stop;
            }
            best_miss = best_miss.min(err);
        }
        if sigma * (next - 2.0 * target) >= 0.0 {
            missed = true;
        }
        phi = next;
        Control::Continue
    });
    match (closed, outcome) {
        (Some((period, closure_error)), _) => OrbitVerdict::Periodic { period, closure_error },
        (None, Ok(Termination::Escaped { time })) => OrbitVerdict::Escaping { exit_time: time },
        (None, Ok(_)) if missed || best_miss.is_finite() => OrbitVerdict::Inconclusive {
            reason: format!("first return misses the start by {best_miss:.3e}"),
        },
        (None, Ok(_)) => OrbitVerdict::Inconclusive {
            reason: "no return to the section before max_time".into(),
        },
        (None, Err(e)) => OrbitVerdict::Inconclusive { reason: e.to_string() },
    }
}

/// Integrates from `x0` and compares the first return to the ray from the
/// origin through `x0` (crossed in the same direction) with `x0` itself.
/// For `x0` on the positive `x` axis the section is `{y = 0, x > 0}`.
/// Orbits leaving the escape radius are followed near infinity and only
/// count as escaping once `ln r` exceeds `cfg.infinity_depth`.
pub fn return_map_verdict(vf: &VectorField, x0: [f64; 2], cfg: &IntegratorConfig) -> OrbitVerdict {
    return_map_compiled(&CompiledField::new(vf), x0, cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub initial: [f64; 2],
    #[serde(flatten)]
    pub verdict: OrbitVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Escaping { initial: [f64; 2], exit_time: f64 },
    Equilibrium { point: [f64; 2] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GlobalTag {
    GlobalCenterConsistent,
    NotGlobal,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalVerdict {
    pub tag: GlobalTag,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<FamilyParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<bool>,
    pub config: IntegratorConfig,
    pub radii: Vec<f64>,
    /// The circle at infinity consists of equilibria, so the uniqueness
    /// criterion for global centers does not apply formally.
    pub line_of_equilibria_at_infinity: bool,
    pub finite_equilibria: EquilibriumScan,
    pub samples: Vec<Sample>,
}

impl GlobalVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdict serializes")
    }

    pub fn inconclusive_samples(&self) -> usize {
        self.samples
            .iter()
            .filter(|s| matches!(s.verdict, OrbitVerdict::Inconclusive { .. }))
            .count()
    }
}

pub fn default_radii() -> Vec<f64> {
    vec![0.5, 1.0, 2.0, 5.0]
}

/// Eight equally spaced angles on each radius, radius-major.
pub fn sample_points(radii: &[f64]) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(radii.len() * 8);
    for &r in radii {
        for k in 0..8 {
            let a = k as f64 * PI / 4.0;
            out.push([r * a.cos(), r * a.sin()]);
        }
    }
    out
}

/// Empirical global-center test for an arbitrary field with an equilibrium
/// at the origin.
pub fn verify_field(vf: &VectorField, cfg: &IntegratorConfig, radii: &[f64]) -> GlobalVerdict {
    let field = CompiledField::new(vf);
    let samples: Vec<Sample> = sample_points(radii)
        .into_par_iter()
        .map(|x0| Sample {
            initial: x0,
            verdict: return_map_compiled(&field, x0, cfg),
        })
        .collect();
    let scan = scan_finite_equilibria(vf);
    let line = infinite_equilibria(vf).line_of_equilibria;

    let escaping = samples.iter().find_map(|s| match s.verdict {
        OrbitVerdict::Escaping { exit_time } => Some(Witness::Escaping {
            initial: s.initial,
            exit_time,
        }),
        _ => None,
    });
    let equilibrium = match &scan {
        EquilibriumScan::Extra { points } => Some(Witness::Equilibrium { point: points[0] }),
        _ => None,
    };
    let (tag, witness) = if let Some(w) = escaping.or(equilibrium) {
        (GlobalTag::NotGlobal, Some(w))
    } else if samples.iter().all(|s| s.verdict.is_periodic()) && scan == EquilibriumScan::OriginOnly {
        (GlobalTag::GlobalCenterConsistent, None)
    } else {
        (GlobalTag::Inconclusive, None)
    };
    GlobalVerdict {
        tag,
        witness,
        params: None,
        center: None,
        config: cfg.clone(),
        radii: radii.to_vec(),
        line_of_equilibria_at_infinity: line,
        finite_equilibria: scan,
        samples,
    }
}

pub fn global_center_verdict(params: &FamilyParams, cfg: &IntegratorConfig, radii: &[f64]) -> GlobalVerdict {
    let mut v = verify_field(&build_system(params), cfg, radii);
    v.params = Some(params.clone());
    v.center = Some(center_cases(params).is_center());
    v
}
