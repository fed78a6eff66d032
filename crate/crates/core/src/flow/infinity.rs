//! Following an orbit through a neighbourhood of infinity.
//!
//! Past the escape radius the orbit is continued in the chart `U1` (`|x| ≥ |y|`)
//! or `U2` of the Poincaré compactification, with `v` replaced by
//! `s = ln|v|`. The chart field
//! has `v̇` divisible by `v`, so `ṡ` is a polynomial and the flow stays
//! regular however close the orbit comes to the circle at infinity (once
//! `e^s` is negligible the orbit simply follows the flow on the circle). Time
//! is rescaled so that `s` and the relative change of `u` advance at unit
//! rate.
//! Original time is carried along as a third component.
//!
//! Some centers of odd degree have periodic orbits reaching `ln r` of
//! 10^11, so no fixed radius separates escape from a large
//! excursion. The orbit is reported as escaped when
//! - `ln r` exceeds `IntegratorConfig::infinity_depth`,
//! - it is still outside the escape radius at the end of the time span, or
//! - `e^s` is negligible and the flow on the circle carries `u` towards
//!   an equilibrium of the circle while `s` keeps decreasing all the way.

use std::f64::consts::LN_2;

use super::integrator::{angle_between, dopri_step, initial_step, CompiledField};
use super::IntegratorConfig;
use crate::compactify::{chart_field, ChartId};
use crate::error::{Error, Result};
use crate::poly::roots::real_roots;
use crate::poly::univariate::UPoly;
use crate::poly::{Var, VectorField};

/// `(u̇, ṡ)` in the charts `U1` and `U2`, before the sign correction for
/// `v < 0`.
#[derive(Debug, Clone)]
pub(crate) struct InfinityFlow {
    charts: [CompiledField; 2],
    circle: [Circle; 2],
    /// `n − 1`, the power of `v` absorbed into the chart time.
    lag: i32,
}

/// `u̇` and `ṡ` restricted to `v = 0`.
#[derive(Debug, Clone)]
struct Circle {
    u_dot: UPoly,
    s_dot: UPoly,
    /// Real zeros of `u_dot`, ascending (empty when `u_dot ≡ 0`).
    equilibria: Vec<f64>,
    /// Real zeros of `s_dot`, ascending.
    turns: Vec<f64>,
}

impl Circle {
    fn new(u_dot: UPoly, s_dot: UPoly) -> Self {
        let zeros = |p: &UPoly| -> Vec<f64> {
            if p.is_zero() {
                return Vec::new();
            }
            let mut z: Vec<f64> = real_roots(p).iter().map(|(r, _)| r.to_f64()).collect();
            z.sort_by(f64::total_cmp);
            z
        };
        Self {
            equilibria: zeros(&u_dot),
            turns: zeros(&s_dot),
            u_dot,
            s_dot,
        }
    }

    /// With `v = 0` and orientation `orient`, does the orbit at `u` drift
    /// into an equilibrium of the circle without `s` ever increasing?
    fn sinks(&self, u: f64, orient: f64) -> bool {
        let f = orient * self.u_dot.eval_f64(u);
        let g = |x: f64| orient * self.s_dot.eval_f64(x);
        if self.u_dot.is_zero() || f == 0.0 {
            return g(u) < 0.0;
        }
        let target = if f > 0.0 {
            self.equilibria.iter().copied().find(|&e| e > u)
        } else {
            self.equilibria.iter().rev().copied().find(|&e| e < u)
        };
        let Some(target) = target.filter(|e| e.abs() <= 1.5) else {
            return false;
        };
        let (lo, hi) = if u < target { (u, target) } else { (target, u) };
        !self.turns.iter().any(|&z| z > lo && z < hi) && g(0.5 * (lo + hi)) < 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct ChartState {
    /// 0 for `U1`, 1 for `U2`.
    chart: usize,
    /// Sign of `v`, i.e. of the dominant coordinate.
    sigma: f64,
}

impl ChartState {
    fn direction(&self, u: f64) -> [f64; 2] {
        if self.chart == 0 {
            [self.sigma, self.sigma * u]
        } else {
            [self.sigma * u, self.sigma]
        }
    }

    fn to_plane(&self, u: f64, s: f64) -> [f64; 2] {
        let big = self.sigma * (-s).exp();
        if self.chart == 0 {
            [big, u * big]
        } else {
            [u * big, big]
        }
    }

    fn switch(&self, u: f64, s: f64) -> (ChartState, f64, f64) {
        let next = ChartState {
            chart: 1 - self.chart,
            sigma: self.sigma * u.signum(),
        };
        (next, 1.0 / u, s - u.abs().ln())
    }
}

fn enter(z: [f64; 2]) -> (ChartState, f64, f64) {
    if z[0].abs() >= z[1].abs() {
        (ChartState { chart: 0, sigma: z[0].signum() }, z[1] / z[0], -z[0].abs().ln())
    } else {
        (ChartState { chart: 1, sigma: z[1].signum() }, z[0] / z[1], -z[1].abs().ln())
    }
}

impl InfinityFlow {
    pub fn new(vf: &VectorField) -> Self {
        let compile = |id: ChartId| -> (CompiledField, Circle) {
            let cf = chart_field(vf, id).field;
            let s_dot = cf.q.divide_monomial(Var::Y, 1).expect("chart v̇ is divisible by v");
            let circle = Circle::new(UPoly::restrict(&cf.p, Var::Y), UPoly::restrict(&s_dot, Var::Y));
            (CompiledField::from_polys(&cf.p, &s_dot), circle)
        };
        let (c1, k1) = compile(ChartId::U1);
        let (c2, k2) = compile(ChartId::U2);
        Self {
            charts: [c1, c2],
            circle: [k1, k2],
            lag: vf.effective_degree() as i32 - 1,
        }
    }

    /// The chart field in `(u, s, t)`, normalized so that `s` and
    /// `u / (|u| + |v|)` move at bounded speed: close to the circle `u`
    /// turns on the scale of `v` rather than 1.
    fn eval(&self, st: ChartState, w: [f64; 3]) -> [f64; 3] {
        let v = if w[1] < -ON_CIRCLE { 0.0 } else { st.sigma * w[1].exp() };
        let [a, b] = self.charts[st.chart].eval([w[0], v]);
        let orient = self.orientation(st);
        let norm = b.abs() + a.abs() / (w[0].abs() + v.abs()).max(f64::MIN_POSITIVE);
        if norm == 0.0 || !norm.is_finite() {
            return [f64::NAN; 3];
        }
        let dt = v.abs().powi(self.lag);
        [orient * a / norm, orient * b / norm, dt / norm]
    }

    fn orientation(&self, st: ChartState) -> f64 {
        if self.lag % 2 == 0 {
            1.0
        } else {
            st.sigma
        }
    }
}

/// How an excursion beyond the escape radius ended.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Excursion {
    /// Back inside the escape radius at time `t`, having turned by `sweep`
    /// radians about the origin.
    Returned { t: f64, z: [f64; 2], sweep: f64 },
    /// Judged to escape; `t` is the time the escape radius was crossed.
    Escaped { t: f64 },
}

const MAX_STEPS: usize = 200_000;

/// Below `s = -ON_CIRCLE` the powers of `v` in the chart field are
/// subnormal or zero, and `v` is taken to be 0.
const ON_CIRCLE: f64 = 200.0;

/// Continues the orbit through `z` (at time `t`, outside the escape radius)
/// until it comes back inside or is judged to escape.
pub(crate) fn excursion(
    flow: &InfinityFlow,
    z: [f64; 2],
    t: f64,
    cfg: &IntegratorConfig,
    t_end: f64,
) -> Result<Excursion> {
    let (mut st, u, s) = enter(z);
    let mut w = [u, s, t];
    let s_back = LN_2 - cfg.escape_radius.ln();
    let mut sweep = 0.0;
    let mut h = {
        let f = |y: [f64; 3]| flow.eval(st, y);
        initial_step(&f, w, f(w), cfg)
    };
    for _ in 0..MAX_STEPS {
        if w[1] < -cfg.infinity_depth || w[2] >= t_end {
            return Ok(Excursion::Escaped { t });
        }
        if w[1] < -ON_CIRCLE && flow.circle[st.chart].sinks(w[0], flow.orientation(st)) {
            return Ok(Excursion::Escaped { t });
        }
        if h < 1e-14 * w[1].abs().max(1.0) {
            return Err(Error::StepUnderflow { t: w[2] });
        }
        let f = |y: [f64; 3]| flow.eval(st, y);
        let fw = f(w);
        if fw.iter().any(|c| !c.is_finite()) {
            return Err(Error::StepUnderflow { t: w[2] });
        }
        let (w1, _, err) = dopri_step(&f, w, fw, h);
        // near the circle u varies on the scale of v = e^s
        let floor = [(cfg.abs_tol * w[1].exp().min(1.0)).max(1e-300), cfg.abs_tol, cfg.abs_tol];
        let mut acc = 0.0;
        for i in 0..3 {
            let sc = floor[i] + cfg.rel_tol * w[i].abs().max(w1[i].abs());
            acc += (err[i] / sc).powi(2);
        }
        let norm = (acc / 3.0).sqrt();
        let ok = norm.is_finite()
            && w1.iter().all(|c| c.is_finite())
            && w1[0].abs() <= 3.0
            && w1[1] <= s_back + 1.0
            && angle_between(st.direction(w[0]), st.direction(w1[0])).abs() < std::f64::consts::FRAC_PI_2;
        if !ok {
            h *= 0.25;
            continue;
        }
        if norm > 1.0 {
            h *= (0.9 * norm.powf(-0.2)).clamp(0.1, 0.9);
            continue;
        }
        sweep += angle_between(st.direction(w[0]), st.direction(w1[0]));
        w = w1;
        h *= if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
        if w[1] > s_back && fw[1] > 0.0 {
            return Ok(Excursion::Returned {
                t: w[2],
                z: st.to_plane(w[0], w[1]),
                sweep,
            });
        }
        if w[0].abs() > 1.5 {
            let (next, u, s) = st.switch(w[0], w[1]);
            st = next;
            w = [u, s, w[2]];
        }
    }
    Err(Error::StepUnderflow { t: w[2] })
}
