//! Fixtures and checks shared by the integration test targets.
#![allow(dead_code)]

use gcenter::classify::{classify_equilibrium, EquilibriumClass, Stability};
use gcenter::compactify::{chart_field, jacobian_at, rescale_infinity_line, ChartId};
use gcenter::desing::{BlowupChain, StepKind};
use gcenter::family::{build_system, center_cases, CenterCase, FamilyParams};
pub use gcenter::poly::{parse_poly, rat, ratio, rational_text, Matrix2, Rational};
use gcenter::{Poly2, VectorField};

pub mod props;

pub fn r(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

/// Case (i) with `b1 ≠ 0`: `c2 = 0`, `d1 = 3 b1`, `d2 = −b2 d1 / b1`.
pub fn case_i(a1: Rational, a2: Rational, b1: Rational, b2: Rational, c1: Rational) -> FamilyParams {
    let d1 = &b1 * rat(3);
    let d2 = -(&b2 * &d1) / &b1;
    FamilyParams::with(&[("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2), ("c1", c1), ("d1", d1), ("d2", d2)])
}

/// Case (i) with `b1 = 0` (so `d1 = 0`).
pub fn case_i0(a1: Rational, a2: Rational, b2: Rational, c1: Rational, d2: Rational) -> FamilyParams {
    FamilyParams::with(&[("a1", a1), ("a2", a2), ("b2", b2), ("c1", c1), ("d2", d2)])
}

/// Case (ii) data with `b1 ≠ 0`: `c2 = 0`, `d2 = −b2 d1 / b1`.
pub fn case_ii(a1: Rational, a2: Rational, b1: Rational, b2: Rational, c1: Rational, d1: Rational) -> FamilyParams {
    let d2 = -(&b2 * &d1) / &b1;
    FamilyParams::with(&[("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2), ("c1", c1), ("d1", d1), ("d2", d2)])
}

/// Case (ii) data with `b1 = 0`.
pub fn case_ii0(a1: Rational, a2: Rational, b2: Rational, c1: Rational, d1: Rational, d2: Rational) -> FamilyParams {
    FamilyParams::with(&[("a1", a1), ("a2", a2), ("b2", b2), ("c1", c1), ("d1", d1), ("d2", d2)])
}

/// Case (iii): `c1 = c2 = 0`, `d1 = −b1`, `d2 = b2`.
pub fn case_iii(a1: Rational, a2: Rational, b1: Rational, b2: Rational) -> FamilyParams {
    FamilyParams::with(&[("a1", a1), ("a2", a2), ("d1", -b1.clone()), ("b1", b1), ("d2", b2.clone()), ("b2", b2)])
}

/// Case (iv): `c2 = d1 = d2 = 0`.
pub fn case_iv(a1: Rational, a2: Rational, b1: Rational, b2: Rational, c1: Rational) -> FamilyParams {
    FamilyParams::with(&[("a1", a1), ("a2", a2), ("b1", b1), ("b2", b2), ("c1", c1)])
}

pub fn template(p: &str, q: &str, vars: (&str, &str), params: &FamilyParams) -> VectorField {
    let b = params.bindings();
    let p = parse_poly(p, vars, &b).unwrap_or_else(|e| panic!("template `{p}`: {e}"));
    let q = parse_poly(q, vars, &b).unwrap_or_else(|e| panic!("template `{q}`: {e}"));
    VectorField::new(p, q).expect("template field is nonzero")
}

/// What to do with the chart field before the step list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    Chart,
    /// Divide out the line of equilibria `v = 0` first.
    ChartLineRescaled,
}

pub struct ChainFixture {
    pub name: &'static str,
    pub chart: ChartId,
    pub start: Start,
    /// Step list; `{name}` and `{-name}` expand to parameter values.
    pub steps: &'static str,
    pub vars: (&'static str, &'static str),
    pub p: &'static str,
    pub q: &'static str,
    pub points: fn() -> Vec<FamilyParams>,
    /// Center case the parameter points must satisfy, if any.
    pub case: Option<CenterCase>,
}

impl ChainFixture {
    pub fn actual(&self, params: &FamilyParams) -> VectorField {
        let cf = chart_field(&build_system(params), self.chart);
        let cf = match self.start {
            Start::Chart => cf,
            Start::ChartLineRescaled => rescale_infinity_line(&cf).expect("v divides the chart field"),
        };
        let mut steps = self.steps.to_string();
        for (name, value) in params.bindings() {
            steps = steps.replace(&format!("{{-{name}}}"), &rational_text(&-value.clone()));
            steps = steps.replace(&format!("{{{name}}}"), &rational_text(&value));
        }
        let mut chain = BlowupChain::new(cf.field);
        for step in StepKind::parse_list(&steps).expect("step list parses") {
            chain.apply(step).unwrap_or_else(|e| panic!("{}: {e}", self.name));
        }
        chain.last().clone()
    }

    pub fn expected(&self, params: &FamilyParams) -> VectorField {
        template(self.p, self.q, self.vars, params)
    }

    /// Compares canonical text at every parameter point; returns the first mismatch.
    pub fn check(&self) -> Result<usize, String> {
        let points = (self.points)();
        for params in &points {
            if let Some(case) = self.case {
                if !center_cases(params).matching_cases.contains(&case) {
                    return Err(format!("{}: point {params} is not in case {case}", self.name));
                }
            }
            let a = self.actual(params).to_text(self.vars.0, self.vars.1);
            let e = self.expected(params).to_text(self.vars.0, self.vars.1);
            if a != e {
                return Err(format!("{} at {params}:\n  got      {a:?}\n  expected {e:?}", self.name));
            }
        }
        Ok(points.len())
    }
}

fn case_i_points() -> Vec<FamilyParams> {
    vec![
        case_i(r(1, 2), rat(-1), rat(1), rat(2), rat(-3)),
        case_i(rat(-2), r(1, 3), r(-1, 2), rat(1), rat(5)),
        case_i(rat(0), rat(0), rat(2), rat(-1), rat(1)),
        case_i(rat(1), rat(2), rat(-3), r(1, 2), r(-1, 2)),
        case_i(rat(3), rat(-1), r(1, 4), rat(-2), rat(2)),
    ]
}

fn case_i1_points() -> Vec<FamilyParams> {
    // a1 = a2 = b2 = 0, b1 = −c1/4
    [rat(-4), rat(-1), r(-1, 2), rat(2), rat(3)]
        .into_iter()
        .map(|c1| case_i(rat(0), rat(0), -&c1 / rat(4), rat(0), c1))
        .collect()
}

fn case_i2_points() -> Vec<FamilyParams> {
    // c1 = a2 = b2 = 0
    [(rat(1), rat(1)), (rat(-2), r(1, 2)), (r(1, 3), rat(-1)), (rat(0), rat(2)), (rat(3), r(-1, 4))]
        .into_iter()
        .map(|(a1, b1)| case_i(a1, rat(0), b1, rat(0), rat(0)))
        .collect()
}

fn case_i2_twist_points() -> Vec<FamilyParams> {
    [r(1, 2), rat(-1), rat(2), r(-1, 3), rat(5)]
        .into_iter()
        .map(|b1| case_i(rat(0), rat(0), b1, rat(0), rat(0)))
        .collect()
}

fn case_i0_points() -> Vec<FamilyParams> {
    vec![
        case_i0(rat(1), rat(-1), rat(2), rat(-3), r(1, 2)),
        case_i0(r(-1, 2), rat(2), rat(0), rat(1), rat(-1)),
        case_i0(rat(0), rat(0), rat(1), rat(1), rat(1)),
        case_i0(rat(2), r(1, 3), rat(-1), r(-1, 2), rat(3)),
        case_i0(rat(-1), rat(1), r(1, 4), rat(2), rat(0)),
    ]
}

fn case_i0_blowup_points() -> Vec<FamilyParams> {
    // a2 = b2 = d2 = 0
    [(rat(1), rat(-2)), (rat(-1), rat(1)), (r(1, 2), rat(3)), (rat(0), rat(-1)), (rat(2), r(-1, 2))]
        .into_iter()
        .map(|(a1, c1)| case_i0(a1, rat(0), rat(0), c1, rat(0)))
        .collect()
}

fn case_i0_degenerate_points() -> Vec<FamilyParams> {
    // a2 = b2 = d2 = 0, c1 = −a1², a1 ≠ 0
    [rat(1), rat(-1), r(1, 2), rat(2), r(-3, 2)]
        .into_iter()
        .map(|a1| {
            let c1 = -(&a1 * &a1);
            case_i0(a1, rat(0), rat(0), c1, rat(0))
        })
        .collect()
}

fn case_ii_points() -> Vec<FamilyParams> {
    // F = 0 holds when d1 = 0, or when b2 = 0 and a1 a2 = 0, or when a1 = a2 = 0
    vec![
        case_ii(rat(1), rat(-2), rat(1), rat(3), rat(-1), rat(0)),
        case_ii(rat(2), rat(0), r(-1, 2), rat(0), rat(1), rat(5)),
        case_ii(rat(0), rat(3), rat(2), rat(0), r(1, 2), rat(-1)),
        case_ii(rat(0), rat(0), rat(-1), rat(2), rat(3), rat(1)),
        case_ii(rat(0), rat(0), r(1, 3), r(-1, 2), rat(-2), rat(4)),
    ]
}

fn case_ii1_points() -> Vec<FamilyParams> {
    // a1 = a2 = b2 = 0, d1 = −b1 − c1
    [(rat(1), rat(-3)), (rat(-1), rat(2)), (r(1, 2), rat(1)), (rat(2), r(-1, 2)), (rat(-3), rat(-1))]
        .into_iter()
        .map(|(b1, c1)| {
            let d1 = -(&b1 + &c1);
            case_ii(rat(0), rat(0), b1, rat(0), c1, d1)
        })
        .collect()
}

fn case_ii2_points() -> Vec<FamilyParams> {
    // a2 = b2 = c1 = 0, b1 + d1 ≠ 0, d1 ≠ 3 b1
    vec![
        case_ii(rat(1), rat(0), rat(1), rat(0), rat(0), rat(4)),
        case_ii(rat(0), rat(0), rat(-4), rat(0), rat(0), rat(0)),
        case_ii(rat(-2), rat(0), r(1, 2), rat(0), rat(0), rat(-3)),
        case_ii(r(1, 3), rat(0), rat(-1), rat(0), rat(0), rat(2)),
        case_ii(rat(3), rat(0), rat(2), rat(0), rat(0), r(1, 2)),
    ]
}

fn case_ii3_points() -> Vec<FamilyParams> {
    // a2 = b2 = c1 = 0, d1 = −b1
    [(rat(1), rat(1)), (rat(0), rat(-2)), (r(-1, 2), r(1, 3)), (rat(2), rat(-1)), (rat(-3), rat(4))]
        .into_iter()
        .map(|(a1, b1)| {
            let d1 = -b1.clone();
            case_ii(a1, rat(0), b1, rat(0), rat(0), d1)
        })
        .collect()
}

fn case_ii0_points() -> Vec<FamilyParams> {
    // b1 = 0 leaves b2 d1 = 0; F = 0 when d2 = 0 and a1 a2 = 0, or d1 = 0 and a2 = ±a1
    vec![
        case_ii0(rat(1), rat(0), rat(0), rat(-1), rat(3), rat(0)),
        case_ii0(rat(0), rat(2), rat(0), rat(1), rat(2), rat(0)),
        case_ii0(rat(-2), rat(0), rat(1), r(1, 2), rat(0), rat(0)),
        case_ii0(rat(1), rat(1), rat(2), rat(3), rat(0), rat(-1)),
        case_ii0(r(1, 2), r(-1, 2), rat(-3), rat(2), rat(0), rat(3)),
    ]
}

fn case_ii4_points() -> Vec<FamilyParams> {
    // a1 = a2 = b2 = d2 = 0, c1 = −d1
    [rat(1), rat(-1), r(1, 2), rat(3), r(-5, 2)]
        .into_iter()
        .map(|d1| {
            let c1 = -d1.clone();
            case_ii0(rat(0), rat(0), rat(0), c1, d1, rat(0))
        })
        .collect()
}

fn case_ii5_points() -> Vec<FamilyParams> {
    // a2 = b2 = d2 = c1 = 0, d1 ≠ 0; a1 = 0 where the printed form and the
    // corrected form coincide
    [rat(1), rat(-1), r(1, 2), rat(3), r(-5, 2)]
        .into_iter()
        .map(|d1| case_ii0(rat(0), rat(0), rat(0), rat(0), d1, rat(0)))
        .collect()
}

fn case_ii5_general_points() -> Vec<FamilyParams> {
    [(rat(1), rat(1)), (rat(-2), rat(-1)), (r(1, 2), rat(3)), (rat(3), r(1, 2)), (r(-1, 3), rat(-4))]
        .into_iter()
        .map(|(a1, d1)| case_ii0(a1, rat(0), rat(0), rat(0), d1, rat(0)))
        .collect()
}

fn case_iii_points() -> Vec<FamilyParams> {
    vec![
        case_iii(rat(1), rat(-1), rat(2), rat(1)),
        case_iii(rat(0), rat(2), r(-1, 2), rat(3)),
        case_iii(r(1, 3), rat(0), rat(1), rat(-2)),
        case_iii(rat(-2), r(1, 2), rat(0), rat(1)),
        case_iii(rat(3), rat(1), rat(-1), r(1, 4)),
    ]
}

fn case_iv_points() -> Vec<FamilyParams> {
    // G = 0 when b2 = 0 and a1 a2 = 0, when b1 = 0 and a2 = ±a1, or when a1 = a2 = 0
    vec![
        case_iv(rat(1), rat(0), rat(2), rat(0), rat(-1)),
        case_iv(rat(0), rat(3), r(-1, 2), rat(0), rat(2)),
        case_iv(rat(1), rat(-1), rat(0), rat(2), rat(3)),
        case_iv(rat(2), rat(2), rat(0), rat(-1), r(1, 2)),
        case_iv(rat(0), rat(0), rat(1), rat(2), rat(-1)),
    ]
}

/// The systems printed for the case analysis, as templates in the
/// parameters.
pub fn chain_fixtures() -> Vec<ChainFixture> {
    use ChartId::{U1, U2};
    use Start::{Chart, ChartLineRescaled};
    let uv = ("u", "v");
    let uv1 = ("u1", "v1");
    let uv2 = ("u2", "v2");
    let uv3 = ("u3", "v3");
    vec![
        ChainFixture {
            name: "case i, chart U1",
            chart: U1,
            start: Chart,
            steps: "",
            vars: uv,
            p: "4*b1 + c1 + 2*c1*u^2 - 2*b2*d1*u*(1 + u^2)/b1 - 2*b2*(u + u^3) \
                - v*(a1*(-1 + 3*u^2) + v + u*(a2*(-3 + u^2) + u*v))",
            q: "-(v/b1)*(b2*d1*(1 + u^2) + b1*(-c1*u + b2*(-1 + 3*u^2) - a2*v + (2*a1 + a2*u + v)*u*v))",
            points: case_i_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i, chart U2",
            chart: U2,
            start: Chart,
            steps: "",
            vars: uv,
            p: "-2*c1*u^2 - (4*b1 + c1)*u^4 + (2*b2/b1)*(b1 + d1)*u*(1 + u^2) + a2*v \
                - (3*a2*u + a1*(-3 + u^2))*u*v + (1 + u^2)*v^2",
            q: "v*((b2/b1)*(-b1 + d1 + (3*b1 + d1)*u^2) + a1*v - u*(c1 + (4*b1 + c1)*u^2 + (2*a2 + a1*u)*v - v^2))",
            points: case_i_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i.1, U1 blow-up",
            chart: U1,
            start: Chart,
            steps: "blowup",
            vars: uv1,
            p: "u1^2*(2*c1 - (1 + u1^2)*v1^2)",
            q: "u1*v1*(v1^2 - c1)",
            points: case_i1_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i.1, U1 blow-up rescaled",
            chart: U1,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "u1*(2*c1 - (1 + u1^2)*v1^2)",
            q: "v1*(v1^2 - c1)",
            points: case_i1_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i.1, U2 blow-up",
            chart: U2,
            start: Chart,
            steps: "blowup",
            vars: uv1,
            p: "-u1^2*(2*c1 - (1 + u1^2)*v1^2)",
            q: "-u1*v1*(v1^2 - c1)",
            points: case_i1_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i.1, U2 blow-up rescaled",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "-u1*(2*c1 - (1 + u1^2)*v1^2)",
            q: "-v1*(v1^2 - c1)",
            points: case_i1_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i.2, U2 blow-up",
            chart: U2,
            start: Chart,
            steps: "blowup",
            vars: uv1,
            p: "-u1^2*(4*b1*u1^2 - 3*a1*v1 + a1*u1^2*v1 - v1^2 - u1^2*v1^2)",
            q: "-u1*v1^2*(2*a1 + v1)",
            points: case_i2_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i.2, U2 blow-up rescaled",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "-u1*(4*b1*u1^2 - 3*a1*v1 + a1*u1^2*v1 - v1^2 - u1^2*v1^2)",
            q: "-v1^2*(2*a1 + v1)",
            points: case_i2_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i.2, twisted",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1,twist:-1",
            vars: uv2,
            p: "-4*b1*(u2 - v2)^3 + v2^2*(u2 + u2^3 - 3*u2^2*v2 + 3*u2*v2^2 - v2*(2 + v2^2))",
            q: "-v2^3",
            points: case_i2_twist_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i.2, second blow-up",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1,twist:-1,blowup",
            vars: uv3,
            p: "-u3^3*(4*b1 - 12*b1*v3 - v3^2 + 12*b1*v3^2 - u3^2*v3^2 + 2*v3^3 - 4*b1*v3^3 + 3*u3^2*v3^3 \
                - 3*u3^2*v3^4 + u3^2*v3^5)",
            // sign of the b1 term as required by the equilibria (0, 0), (0, 1), (0, 1/2) at b1 = 1/2
            q: "u3^2*(v3 - 1)*v3*(-4*b1*(1 - v3)^2 + (2 + u3^2*(-1 + v3)^2)*v3^2)",
            points: case_i2_twist_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i.2, second blow-up rescaled",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1,twist:-1,blowup,rescale:u:2",
            vars: uv3,
            p: "-u3*(4*b1 - 12*b1*v3 - v3^2 + 12*b1*v3^2 - u3^2*v3^2 + 2*v3^3 - 4*b1*v3^3 + 3*u3^2*v3^3 \
                - 3*u3^2*v3^4 + u3^2*v3^5)",
            q: "(v3 - 1)*v3*(-4*b1*(1 - v3)^2 + (2 + u3^2*(-1 + v3)^2)*v3^2)",
            points: case_i2_twist_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i (b1 = 0), chart U1",
            chart: U1,
            start: Chart,
            steps: "",
            vars: uv,
            p: "c1 + 2*c1*u^2 - 2*(b2 - d2)*(u + u^3) + a1*v - (3*a1*u + a2*(-3 + u^2))*u*v - (1 + u^2)*v^2",
            q: "v*(b2 + d2 + c1*u - 3*b2*u^2 + a2*v + u*(d2*u - v*(2*a1 + a2*u + v)))",
            points: case_i0_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i (b1 = 0), chart U2",
            chart: U2,
            start: Chart,
            steps: "",
            vars: uv,
            p: "-c1*u^2*(2 + u^2) + 2*b2*(u + u^3) - 2*d2*(u + u^3) + a2*v - (3*a2*u + a1*(-3 + u^2))*u*v \
                + (1 + u^2)*v^2",
            q: "-v*(b2 - 3*b2*u^2 + (d2 + c1*u)*(1 + u^2) + 2*a2*u*v + a1*(-1 + u^2)*v - u*v^2)",
            points: case_i0_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i (b1 = 0), U2 blow-up",
            chart: U2,
            start: Chart,
            steps: "blowup",
            vars: uv1,
            p: "u1^2*(-c1*(2 + u1^2) + v1*(3*a1 - a1*u1^2 + v1 + u1^2*v1))",
            q: "u1*v1*(c1 - v1*(2*a1 + v1))",
            points: case_i0_blowup_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i (b1 = 0), U2 blow-up rescaled",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "u1*(-c1*(2 + u1^2) + v1*(3*a1 - a1*u1^2 + v1 + u1^2*v1))",
            q: "v1*(c1 - v1*(2*a1 + v1))",
            points: case_i0_blowup_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i (b1 = 0), translated",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1,translate:0:{-a1}",
            vars: uv2,
            p: "u2*(3*a1^2*u2^2 + (1 + u2^2)*v2^2 + a1*(v2 - 3*u2^2*v2))",
            q: "v2^2*(a1 - v2)",
            points: case_i0_degenerate_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i (b1 = 0), second blow-up",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1,translate:0:{-a1},blowup",
            vars: uv3,
            p: "u3^2*(3*a1^2*u3 + (1 + u3^2)*u3*v3^2 + a1*(v3 - 3*u3^2*v3))",
            q: "-u3^2*v3*(3*a1^2 - 3*a1*u3*v3 + (2 + u3^2)*v3^2)",
            points: case_i0_degenerate_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case i (b1 = 0), second blow-up rescaled",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1,translate:0:{-a1},blowup,rescale:u:2",
            vars: uv3,
            p: "3*a1^2*u3 + (1 + u3^2)*u3*v3^2 + a1*(v3 - 3*u3^2*v3)",
            q: "-v3*(3*a1^2 - 3*a1*u3*v3 + (2 + u3^2)*v3^2)",
            points: case_i0_degenerate_points,
            case: Some(CenterCase::I),
        },
        ChainFixture {
            name: "case ii, chart U1",
            chart: U1,
            start: Chart,
            steps: "",
            vars: uv,
            p: "b1 + c1 + d1 + 2*c1*u^2 - 2*b2*d1*u*(1 + u^2)/b1 - 2*b2*(u + u^3) + a1*v \
                - v*(a2*u*(-3 + u^2) + v + u^2*(3*a1 + v))",
            q: "v*(b2 + 3*b1*u - 3*b2*u^2 - b2*d1*(1 + u^2)/b1 + a2*v - u*(-c1 + d1 + v*(2*a1 + a2*u + v)))",
            points: case_ii_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii, chart U2",
            chart: U2,
            start: Chart,
            steps: "",
            vars: uv,
            p: "-2*c1*u^2 - (b1 + c1 + d1)*u^4 + (2*b2/b1)*(b1 + d1)*u*(1 + u^2) + a2*v \
                - u*(3*a2*u + a1*(-3 + u^2))*v + (1 + u^2)*v^2",
            q: "v*((b2/b1)*(-b1 + d1 + (3*b1 + d1)*u^2) + a1*v - u*(c1 + d1 + (c1 + d1)*u^2 \
                + b1*(-3 + u^2) + 2*a2*v + a1*u*v - v^2))",
            points: case_ii_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.1, U1 blow-up",
            chart: U1,
            start: Chart,
            steps: "blowup",
            vars: uv1,
            p: "u1^2*(2*c1 - (1 + u1^2)*v1^2)",
            q: "u1*(4*b1*v1 + v1^3)",
            points: case_ii1_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.1, U1 blow-up rescaled",
            chart: U1,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "u1*(2*c1 - (1 + u1^2)*v1^2)",
            q: "4*b1*v1 + v1^3",
            points: case_ii1_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.1, U2 blow-up",
            chart: U2,
            start: Chart,
            steps: "blowup",
            vars: uv1,
            p: "u1^2*(-2*c1 + (1 + u1^2)*v1^2)",
            q: "u1*v1*(4*b1 + 2*c1 - v1^2)",
            points: case_ii1_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.1, U2 blow-up rescaled",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "u1*(-2*c1 + (1 + u1^2)*v1^2)",
            q: "v1*(4*b1 + 2*c1 - v1^2)",
            points: case_ii1_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.2, U2 blow-up",
            chart: U2,
            start: Chart,
            steps: "blowup",
            vars: uv1,
            p: "u1^2*(-(b1 + d1)*u1^2 - a1*(-3 + u1^2)*v1 + (1 + u1^2)*v1^2)",
            q: "-u1*v1*(-3*b1 + d1 + v1*(2*a1 + v1))",
            points: case_ii2_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.2, U2 blow-up rescaled",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "u1*(-(b1 + d1)*u1^2 - a1*(-3 + u1^2)*v1 + (1 + u1^2)*v1^2)",
            q: "-v1*(-3*b1 + d1 + v1*(2*a1 + v1))",
            points: case_ii2_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.3, U1 line rescaled",
            chart: U1,
            start: ChartLineRescaled,
            steps: "",
            vars: uv,
            p: "a1*(1 - 3*u^2) - v - u^2*v",
            q: "4*b1*u - u*v*(2*a1 + v)",
            points: case_ii3_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii (b1 = 0), chart U1",
            chart: U1,
            start: Chart,
            steps: "",
            vars: uv,
            p: "c1 + d1 + 2*c1*u^2 - 2*(b2 - d2)*(u + u^3) + a1*v - u*(3*a1*u + a2*(-3 + u^2))*v - (1 + u^2)*v^2",
            q: "v*(b2 - 3*b2*u^2 + d2*(1 + u^2) + a2*v - u*(-c1 + d1 + v*(2*a1 + a2*u + v)))",
            points: case_ii0_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii (b1 = 0), chart U2",
            chart: U2,
            start: Chart,
            steps: "",
            vars: uv,
            p: "2*b2*(u + u^3) - u*(2*c1*u + (c1 + d1)*u^3 + 2*d2*(1 + u^2)) + a2*v \
                - u*(3*a2*u + a1*(-3 + u^2))*v + (1 + u^2)*v^2",
            q: "-v*(b2 + d2 + (c1 + d1)*u^3 - a1*v + u^2*(-3*b2 + d2 + a1*v) + u*(c1 + d1 + 2*a2*v - v^2))",
            points: case_ii0_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.4, U1 blow-up",
            chart: U1,
            start: Chart,
            steps: "blowup",
            vars: uv1,
            p: "-u1^2*(2*d1 + (1 + u1^2)*v1^2)",
            q: "u1*v1^3",
            points: case_ii4_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.4, U1 blow-up rescaled",
            chart: U1,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "-u1*(2*d1 + (1 + u1^2)*v1^2)",
            q: "v1^3",
            points: case_ii4_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.4, U2 blow-up",
            chart: U2,
            start: Chart,
            steps: "blowup",
            vars: uv1,
            p: "u1^2*(2*d1 + (1 + u1^2)*v1^2)",
            q: "-u1*(2*d1*v1 + v1^3)",
            points: case_ii4_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.4, U2 blow-up rescaled",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "u1*(2*d1 + (1 + u1^2)*v1^2)",
            q: "-2*d1*v1 - v1^3",
            points: case_ii4_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.5, U2 blow-up rescaled (a1 = 0)",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "-u1*(d1*u1^2 - 3*a1*v1 + a1*u1^2*v1 - v1^2 - u1^2*v1^2)",
            q: "-v1*(d1 + v1*(2*a1*v1 + v1))",
            points: case_ii5_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case ii.5, U2 blow-up rescaled",
            chart: U2,
            start: Chart,
            steps: "blowup,rescale:u:1",
            vars: uv1,
            p: "-u1*(d1*u1^2 - 3*a1*v1 + a1*u1^2*v1 - v1^2 - u1^2*v1^2)",
            // v1*(2*a1 + v1) inside the bracket; matches the stated q± = (0, −a1 ± √(a1² − d1))
            q: "-v1*(d1 + v1*(2*a1 + v1))",
            points: case_ii5_general_points,
            case: Some(CenterCase::Ii),
        },
        ChainFixture {
            name: "case iii, chart U1",
            chart: U1,
            start: Chart,
            steps: "",
            vars: uv,
            p: "-v*(a1*(-1 + 3*u^2) + v + u*(a2*(-3 + u^2) + u*v))",
            q: "-v*(-4*b1*u + 2*b2*(-1 + u^2) - a2*v + u*v*(2*a1 + a2*u + v))",
            points: case_iii_points,
            case: Some(CenterCase::Iii),
        },
        ChainFixture {
            name: "case iii, chart U2",
            chart: U2,
            start: Chart,
            steps: "",
            vars: uv,
            p: "v*(a2 + 3*a1*u - 3*a2*u^2 + v + u^2*(-a1*u + v))",
            q: "v*(4*b1*u + 2*b2*(-1 + u^2) + a1*v + u*v*(-2*a2 - a1*u + v))",
            points: case_iii_points,
            case: Some(CenterCase::Iii),
        },
        ChainFixture {
            name: "case iii, U1 line rescaled",
            chart: U1,
            start: ChartLineRescaled,
            steps: "",
            vars: uv,
            p: "-(a1*(-1 + 3*u^2) + v + u*(a2*(-3 + u^2) + u*v))",
            q: "-(-4*b1*u + 2*b2*(-1 + u^2) - a2*v + u*v*(2*a1 + a2*u + v))",
            points: case_iii_points,
            case: Some(CenterCase::Iii),
        },
        ChainFixture {
            name: "case iv, chart U1",
            chart: U1,
            start: Chart,
            steps: "",
            vars: uv,
            p: "b1 + c1 + 2*c1*u^2 - 2*b2*(u + u^3) + a1*v - v*(a2*u*(-3 + u^2) + v + u^2*(3*a1 + v))",
            q: "v*(b2 - 3*b2*u^2 + a2*v + u*(3*b1 + c1 - v*(2*a1 + a2*u + v)))",
            points: case_iv_points,
            case: Some(CenterCase::Iv),
        },
        ChainFixture {
            name: "case iv, chart U2",
            chart: U2,
            start: Chart,
            steps: "",
            vars: uv,
            p: "-2*c1*u^2 - (b1 + c1)*u^4 + 2*b2*(u + u^3) + a2*v - (3*a2*u + a1*(-3 + u^2))*u*v + (1 + u^2)*v^2",
            q: "-v*(b2 - 3*b2*u^2 - a1*v + u*(c1 + c1*u^2 + b1*(-3 + u^2) + 2*a2*v + a1*u*v - v^2))",
            points: case_iv_points,
            case: Some(CenterCase::Iv),
        },
    ]
}

/// Entries of the U2-origin Jacobian as printed, for a parameter point.
pub struct JacobianFixture {
    pub name: &'static str,
    pub entries: [&'static str; 4],
    pub points: fn() -> Vec<FamilyParams>,
}

pub fn jacobian_fixtures() -> Vec<JacobianFixture> {
    vec![
        JacobianFixture {
            name: "case i",
            entries: ["2*b2*(b1 + d1)/b1", "a2", "0", "b2*(d1 - b1)/b1"],
            points: case_i_points,
        },
        JacobianFixture {
            name: "case ii",
            entries: ["2*b2*(d1 + b1)/b1", "a2", "0", "b2*(d1 - b1)/b1"],
            points: case_ii_points,
        },
        JacobianFixture {
            name: "case i (b1 = 0)",
            entries: ["2*b2 - 2*d2", "a2", "0", "-b2 - d2"],
            points: case_i0_points,
        },
        JacobianFixture {
            name: "case ii (b1 = 0)",
            entries: ["2*b2 - 2*d2", "a2", "0", "-b2 - d2"],
            points: case_ii0_points,
        },
        JacobianFixture {
            name: "case iv",
            entries: ["2*b2", "a2", "0", "-b2"],
            points: case_iv_points,
        },
    ]
}

impl JacobianFixture {
    pub fn check(&self) -> Result<usize, String> {
        let points = (self.points)();
        for params in &points {
            let u2 = chart_field(&build_system(params), ChartId::U2).field;
            let zero = rat(0);
            let actual = jacobian_at(&u2, (&zero, &zero));
            let b = params.bindings();
            let value = |s: &str| parse_poly(s, ("x", "y"), &b).expect("entry parses").coeff(0, 0);
            let expected: Matrix2 = [
                [value(self.entries[0]), value(self.entries[1])],
                [value(self.entries[2]), value(self.entries[3])],
            ];
            if actual != expected {
                return Err(format!("{} at {params}: got {actual:?}, expected {expected:?}", self.name));
            }
        }
        Ok(points.len())
    }
}

/// `(trace, det)` of a matrix with the given real eigenvalues.
pub fn trace_det(l1: &Rational, l2: &Rational) -> (Rational, Rational) {
    (l1 + l2, l1 * l2)
}

pub fn poly(s: &str) -> Poly2 {
    Poly2::parse(s).unwrap()
}

/// A chart field after a list of steps, for fixed parameters.
pub fn chain(params: &FamilyParams, chart: ChartId, steps: &str) -> VectorField {
    let mut chain = BlowupChain::new(chart_field(&build_system(params), chart).field);
    for step in StepKind::parse_list(steps).expect("step list parses") {
        chain.apply(step).expect("step applies");
    }
    chain.last().clone()
}

pub struct ClassFixture {
    pub name: &'static str,
    pub params: FamilyParams,
    pub chart: ChartId,
    pub steps: &'static str,
    pub point: (Rational, Rational),
    pub eigenvalues: (Rational, Rational),
    pub class: EquilibriumClass,
}

impl ClassFixture {
    pub fn check(&self) -> Result<(), String> {
        let vf = chain(&self.params, self.chart, self.steps);
        let pt = (&self.point.0, &self.point.1);
        if !vf.is_equilibrium(pt.0, pt.1) {
            return Err(format!("{}: ({}, {}) is not an equilibrium", self.name, pt.0, pt.1));
        }
        let j = jacobian_at(&vf, pt);
        let trace = &j[0][0] + &j[1][1];
        let det = &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0];
        if (trace.clone(), det.clone()) != trace_det(&self.eigenvalues.0, &self.eigenvalues.1) {
            return Err(format!(
                "{}: trace {trace}, det {det}; expected eigenvalues {} and {}",
                self.name, self.eigenvalues.0, self.eigenvalues.1
            ));
        }
        let class = classify_equilibrium(&vf, pt).map_err(|e| format!("{}: {e}", self.name))?;
        if class != self.class {
            return Err(format!("{}: classified {class:?}, expected {:?}", self.name, self.class));
        }
        Ok(())
    }
}

pub fn class_fixtures() -> Vec<ClassFixture> {
    use ChartId::{U1, U2};
    use EquilibriumClass::*;
    use Stability::*;
    let z = || rat(0);
    let fx = |name, params, chart, steps, point: (i64, i64), eig: (Rational, Rational), class| ClassFixture {
        name,
        params,
        chart,
        steps,
        point: (rat(point.0), rat(point.1)),
        eigenvalues: eig,
        class,
    };
    let resc = "blowup,rescale:u:1";
    let twisted = "blowup,rescale:u:1,twist:-1,blowup,rescale:u:2";
    let mut out = vec![
        fx("i.1 U1 origin, c1 = -1", case_i(z(), z(), r(1, 4), z(), rat(-1)), U1, resc, (0, 0), (rat(-2), rat(1)), HyperbolicSaddle),
        fx("i.1 U1 q+, c1 = 1", case_i(z(), z(), r(-1, 4), z(), rat(1)), U1, resc, (0, 1), (rat(1), rat(2)), HyperbolicNode(Unstable)),
        fx("i.1 U1 q-, c1 = 1", case_i(z(), z(), r(-1, 4), z(), rat(1)), U1, resc, (0, -1), (rat(1), rat(2)), HyperbolicNode(Unstable)),
        fx("i.1 U1 q+, c1 = 4", case_i(z(), z(), rat(-1), z(), rat(4)), U1, resc, (0, 2), (rat(4), rat(8)), HyperbolicNode(Unstable)),
        fx("i.1 U2 origin, c1 = -2", case_i(z(), z(), r(1, 2), z(), rat(-2)), U2, resc, (0, 0), (rat(4), rat(-2)), HyperbolicSaddle),
        fx("i.2 U2 (0, -2a1), a1 = 1", case_i(rat(1), z(), rat(1), z(), z()), U2, resc, (0, -2), (rat(-2), rat(-4)), HyperbolicNode(Stable)),
        fx("i.2 twisted origin, b1 = -1", case_i(z(), z(), rat(-1), z(), z()), U2, twisted, (0, 0), (rat(4), rat(-4)), HyperbolicSaddle),
        fx("i.2 twisted (0, 1), b1 = -1", case_i(z(), z(), rat(-1), z(), z()), U2, twisted, (0, 1), (rat(-1), rat(2)), HyperbolicSaddle),
        fx("i b1 = 0, a1 = 1, c1 = -1, after translation", case_i0(rat(1), z(), z(), rat(-1), z()), U2,
            "blowup,rescale:u:1,translate:0:-1,blowup,rescale:u:2", (0, 0), (rat(3), rat(-3)), HyperbolicSaddle),
        fx("ii.1 U1 q+, c1 = -2b1 = 2", case_ii(z(), z(), rat(-1), z(), rat(2), rat(-1)), U1, resc, (0, 2), (rat(0), rat(8)), SemiHyperbolicSaddle),
        fx("ii.1 U1 q-, c1 = -2b1 = 2", case_ii(z(), z(), rat(-1), z(), rat(2), rat(-1)), U1, resc, (0, -2), (rat(0), rat(8)), SemiHyperbolicSaddle),
        fx("ii.1 U2 origin, c1 = -2b1 = -2", case_ii(z(), z(), rat(1), z(), rat(-2), rat(1)), U2, resc, (0, 0), (rat(4), rat(0)), SemiHyperbolicSaddle),
        fx("ii.1 U2 origin, c1 = -3 < -2b1", case_ii(z(), z(), rat(1), z(), rat(-3), rat(2)), U2, resc, (0, 0), (rat(6), rat(-2)), HyperbolicSaddle),
        // eigenvalues −2a1² and 0
        fx("ii.2 q+, a1^2 + 3b1 - d1 = 0", case_ii(rat(1), z(), rat(1), z(), z(), rat(4)), U2, resc, (0, -1), (rat(-2), rat(0)), SemiHyperbolicSaddleNode),
        fx("ii.2 origin, b1 + d1 < 0", case_ii(z(), z(), rat(-4), z(), z(), z()), U2, resc, (0, 0), (rat(0), rat(-12)), SemiHyperbolicSaddle),
        fx("ii.2 origin, b1 + d1 > 0", case_ii(z(), z(), rat(1), z(), z(), rat(4)), U2, resc, (0, 0), (rat(0), rat(-1)), SemiHyperbolicNode(Stable)),
        fx("ii.4 U1 origin, d1 = 1", case_ii0(z(), z(), z(), rat(-1), rat(1), z()), U1, resc, (0, 0), (rat(-2), rat(0)), SemiHyperbolicSaddle),
        fx("ii.4 U1 origin, d1 = -1", case_ii0(z(), z(), z(), rat(1), rat(-1), z()), U1, resc, (0, 0), (rat(2), rat(0)), SemiHyperbolicNode(Unstable)),
        fx("ii.4 U2 origin, d1 = 1", case_ii0(z(), z(), z(), rat(-1), rat(1), z()), U2, resc, (0, 0), (rat(2), rat(-2)), HyperbolicSaddle),
        fx("ii.5 origin, d1 = 1", case_ii0(z(), z(), z(), z(), rat(1), z()), U2, resc, (0, 0), (rat(0), rat(-1)), SemiHyperbolicNode(Stable)),
        fx("ii.5 origin, d1 = -1", case_ii0(rat(1), z(), z(), z(), rat(-1), z()), U2, resc, (0, 0), (rat(0), rat(1)), SemiHyperbolicNode(Unstable)),
    ];
    // b1 = 1/2: the node (0, 1/2) with eigenvalues −1/4 and −1
    out.push(ClassFixture {
        name: "i.2 twisted (0, 1/2), b1 = 1/2",
        params: case_i(z(), z(), r(1, 2), z(), z()),
        chart: U2,
        steps: twisted,
        point: (rat(0), r(1, 2)),
        eigenvalues: (r(-1, 4), rat(-1)),
        class: HyperbolicNode(Stable),
    });
    out
}
