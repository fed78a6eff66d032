//! Dormand–Prince 5(4) with cubic Hermite dense output.

use std::f64::consts::PI;

use serde::Serialize;

use super::infinity::{excursion, Excursion, InfinityFlow};
use super::IntegratorConfig;
use crate::error::{Error, Result};
use crate::poly::{rational_to_f64, Poly2, VectorField};

/// A polynomial field flattened to `f64` monomial lists for fast evaluation.
#[derive(Debug, Clone)]
pub struct CompiledField {
    p: Vec<(usize, usize, f64)>,
    q: Vec<(usize, usize, f64)>,
    degree: usize,
    infinity: Option<Box<InfinityFlow>>,
}

impl CompiledField {
    pub fn new(vf: &VectorField) -> Self {
        let mut out = Self::from_polys(&vf.p, &vf.q);
        out.infinity = Some(Box::new(InfinityFlow::new(vf)));
        out
    }

    /// Compiles a pair of polynomials without the charts at infinity.
    pub(crate) fn from_polys(p: &Poly2, q: &Poly2) -> Self {
        let flat = |poly: &Poly2| -> Vec<(usize, usize, f64)> {
            poly.terms()
                .map(|(m, c)| (m.i as usize, m.j as usize, rational_to_f64(c)))
                .collect()
        };
        Self {
            p: flat(p),
            q: flat(q),
            degree: p.degree().max(q.degree()).max(0) as usize,
            infinity: None,
        }
    }

    pub fn eval(&self, z: [f64; 2]) -> [f64; 2] {
        let n = self.degree + 1;
        let mut xp = [1.0f64; 16];
        let mut yp = [1.0f64; 16];
        if n > xp.len() {
            return [eval_slow(&self.p, z), eval_slow(&self.q, z)];
        }
        for k in 1..n {
            xp[k] = xp[k - 1] * z[0];
            yp[k] = yp[k - 1] * z[1];
        }
        let sum = |terms: &[(usize, usize, f64)]| terms.iter().map(|&(i, j, c)| c * xp[i] * yp[j]).sum::<f64>();
        [sum(&self.p), sum(&self.q)]
    }
}

fn eval_slow(terms: &[(usize, usize, f64)], z: [f64; 2]) -> f64 {
    terms
        .iter()
        .map(|&(i, j, c)| c * z[0].powi(i as i32) * z[1].powi(j as i32))
        .sum()
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One trial step: new state, derivative at the new state and the error
/// estimate vector.
pub(crate) fn dopri_step<const N: usize, F>(f: &F, y: [f64; N], k1: [f64; N], h: f64) -> ([f64; N], [f64; N], [f64; N])
where
    F: Fn([f64; N]) -> [f64; N],
{
    let mut k = [[0.0f64; N]; 7];
    k[0] = k1;
    for s in 1..7 {
        let mut ys = y;
        for (j, kj) in k.iter().enumerate().take(s) {
            let a = A[s][j];
            if a != 0.0 {
                for i in 0..N {
                    ys[i] += h * a * kj[i];
                }
            }
        }
        if s == 6 {
            // the last stage is evaluated at the 5th-order solution
            let f7 = f(ys);
            k[6] = f7;
            let mut err = [0.0; N];
            for (j, kj) in k.iter().enumerate() {
                for i in 0..N {
                    err[i] += h * E[j] * kj[i];
                }
            }
            return (ys, f7, err);
        }
        k[s] = f(ys);
    }
    unreachable!()
}

/// Integrates from `y` over exactly `h` with a single step (used to land on
/// event times inside an accepted step).
pub(crate) fn single_step(f: &CompiledField, y: [f64; 2], h: f64) -> [f64; 2] {
    dopri_step(&|z| f.eval(z), y, f.eval(y), h).0
}

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Termination {
    MaxTime,
    Escaped { time: f64 },
    Stopped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Accepted step end points `(t, state)`, starting with the initial point.
    pub points: Vec<(f64, [f64; 2])>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn last(&self) -> [f64; 2] {
        self.points.last().expect("nonempty trajectory").1
    }
}

/// A single accepted step with the data needed for Hermite interpolation,
/// or a whole excursion beyond the escape radius (no interpolant).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Step {
    pub t0: f64,
    pub y0: [f64; 2],
    pub f0: [f64; 2],
    pub t1: f64,
    pub y1: [f64; 2],
    pub f1: [f64; 2],
    /// Signed angle swept about the origin.
    pub sweep: f64,
    pub at_infinity: bool,
}

impl Step {
    pub fn hermite(&self, t: f64) -> [f64; 2] {
        let h = self.t1 - self.t0;
        let s = (t - self.t0) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        let mut out = [0.0; 2];
        for i in 0..2 {
            out[i] = h00 * self.y0[i] + h10 * h * self.f0[i] + h01 * self.y1[i] + h11 * h * self.f1[i];
        }
        out
    }
}

pub(crate) enum Control {
    Continue,
    Stop,
}

const MAX_STEPS: usize = 2_000_000;

/// What to do when an orbit leaves the escape radius moving outward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AtEscape {
    Stop,
    /// Follow it through the charts at infinity (see [`super::infinity`]).
    Continue,
}

/// Core adaptive loop. `on_step` sees every accepted step and may stop the
/// integration. Escape is checked after each step.
pub(crate) fn drive<F>(
    field: &CompiledField,
    y0: [f64; 2],
    cfg: &IntegratorConfig,
    t_end: f64,
    at_escape: AtEscape,
    mut on_step: F,
) -> Result<Termination>
where
    F: FnMut(&Step) -> Control,
{
    let eval = |z: [f64; 2]| field.eval(z);
    let mut t = 0.0f64;
    let mut y = y0;
    let mut fy = field.eval(y);
    let max_h = (t_end / 8.0).min(0.5);
    let mut h = initial_step(&eval, y, fy, cfg).min(max_h);
    for _ in 0..MAX_STEPS {
        if t >= t_end - 1e-13 * t_end.max(1.0) {
            return Ok(Termination::MaxTime);
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepUnderflow { t });
        }
        let h_try = h.min(t_end - t);
        let (y1, f1, err) = dopri_step(&eval, y, fy, h_try);
        let mut acc = 0.0;
        for i in 0..2 {
            let sc = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(y1[i].abs());
            acc += (err[i] / sc).powi(2);
        }
        let norm = (acc / 2.0).sqrt();
        let turn = angle_between(y, y1).abs();
        if !norm.is_finite() || !y1[0].is_finite() || !y1[1].is_finite() {
            h = h_try * 0.2;
            continue;
        }
        if norm <= 1.0 && turn < PI / 2.0 {
            let step = Step {
                t0: t,
                y0: y,
                f0: fy,
                t1: t + h_try,
                y1,
                f1,
                sweep: angle_between(y, y1),
                at_infinity: false,
            };
            t = step.t1;
            y = y1;
            fy = f1;
            if let Control::Stop = on_step(&step) {
                return Ok(Termination::Stopped);
            }
            let r2 = y[0] * y[0] + y[1] * y[1];
            let radial = y[0] * fy[0] + y[1] * fy[1];
            if r2 > cfg.escape_radius * cfg.escape_radius && radial > 0.0 {
                let flow = match (at_escape, &field.infinity) {
                    (AtEscape::Continue, Some(flow)) => flow,
                    _ => return Ok(Termination::Escaped { time: t }),
                };
                match excursion(flow, y, t, cfg, t_end)? {
                    Excursion::Escaped { t } => return Ok(Termination::Escaped { time: t }),
                    Excursion::Returned { t: t1, z, sweep } => {
                        let f1 = field.eval(z);
                        let step = Step {
                            t0: t,
                            y0: y,
                            f0: fy,
                            t1,
                            y1: z,
                            f1,
                            sweep,
                            at_infinity: true,
                        };
                        t = t1;
                        y = z;
                        fy = f1;
                        if let Control::Stop = on_step(&step) {
                            return Ok(Termination::Stopped);
                        }
                        h = initial_step(&eval, y, fy, cfg).min(max_h);
                        continue;
                    }
                }
            }
            let fac = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
            h = (h_try * fac).min(max_h);
        } else if norm > 1.0 {
            h = h_try * (0.9 * norm.powf(-0.2)).clamp(0.1, 0.9);
        } else {
            h = h_try * 0.5;
        }
    }
    Err(Error::StepUnderflow { t })
}

/// Hairer–Wanner starting step size.
pub(crate) fn initial_step<const N: usize, F>(f: &F, y: [f64; N], fy: [f64; N], cfg: &IntegratorConfig) -> f64
where
    F: Fn([f64; N]) -> [f64; N],
{
    let sc = |i: usize| cfg.abs_tol + cfg.rel_tol * y[i].abs();
    let rms = |g: &dyn Fn(usize) -> f64| ((0..N).map(|i| (g(i) / sc(i)).powi(2)).sum::<f64>() / N as f64).sqrt();
    let d0 = rms(&|i| y[i]);
    let d1 = rms(&|i| fy[i]);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let mut y1 = y;
    for i in 0..N {
        y1[i] += h0 * fy[i];
    }
    let f1 = f(y1);
    let d2 = rms(&|i| f1[i] - fy[i]) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    (100.0 * h0).min(h1)
}

/// Signed angle from `a` to `b` in `(-π, π]`.
pub(crate) fn angle_between(a: [f64; 2], b: [f64; 2]) -> f64 {
    let cross = a[0] * b[1] - a[1] * b[0];
    let dot = a[0] * b[0] + a[1] * b[1];
    cross.atan2(dot)
}

/// Integrates from `x0` until `cfg.max_time` or escape.
pub fn integrate(vf: &VectorField, x0: [f64; 2], cfg: &IntegratorConfig) -> Result<Trajectory> {
    let field = CompiledField::new(vf);
    integrate_compiled(&field, x0, cfg, cfg.max_time)
}

pub(crate) fn integrate_compiled(
    field: &CompiledField,
    x0: [f64; 2],
    cfg: &IntegratorConfig,
    t_end: f64,
) -> Result<Trajectory> {
    let mut points = vec![(0.0, x0)];
    let termination = drive(field, x0, cfg, t_end, AtEscape::Stop, |s| {
        points.push((s.t1, s.y1));
        Control::Continue
    })?;
    Ok(Trajectory { points, termination })
}
