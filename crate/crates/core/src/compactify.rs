//! Poincaré compactification in local charts.
//!
//! For a field `(P, Q)` of degree `n` the chart fields are
//!
//! ```text
//! U1: u̇ = vⁿ(−u·P(1/v, u/v) + Q(1/v, u/v)),  v̇ = −vⁿ⁺¹·P(1/v, u/v)
//! U2: u̇ = vⁿ(−u·Q(u/v, 1/v) + P(u/v, 1/v)),  v̇ = −vⁿ⁺¹·Q(u/v, 1/v)
//! U3: the field itself
//! ```
//!
//! and the V charts are the U charts multiplied by `(−1)^(n−1)`. In every
//! chart the first coordinate is `u` and the second `v`; `v = 0` is the
//! circle at infinity.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::roots::{real_roots, RealRoot};
use crate::poly::univariate::UPoly;
use crate::poly::{rat, Matrix2, Poly2, Rational, Var, VectorField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChartId {
    U1,
    U2,
    U3,
    V1,
    V2,
}

impl ChartId {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u1" => Some(Self::U1),
            "u2" => Some(Self::U2),
            "u3" => Some(Self::U3),
            "v1" => Some(Self::V1),
            "v2" => Some(Self::V2),
            _ => None,
        }
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A vector field expressed in the local coordinates `(u, v)` of a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartField {
    pub chart: ChartId,
    pub field: VectorField,
    pub n_used: u32,
}

impl ChartField {
    pub fn text(&self) -> String {
        self.field.to_text("u", "v")
    }
}

/// Chart field with `n` set to the effective degree of `vf`.
pub fn chart_field(vf: &VectorField, chart: ChartId) -> ChartField {
    chart_field_with_degree(vf, chart, vf.effective_degree())
        .expect("effective degree always bounds the field degree")
}

/// Chart field compactified with an explicit `n` (must be at least the
/// degree of the field).
pub fn chart_field_with_degree(vf: &VectorField, chart: ChartId, n: u32) -> Result<ChartField> {
    let u = Poly2::x();
    let v = Poly2::y();
    let (p, q) = (&vf.p, &vf.q);
    let field = match chart {
        ChartId::U3 => {
            vf.effective_degree_check(n)?;
            vf.clone()
        }
        ChartId::U1 | ChartId::V1 => {
            let pt = p.dilate_chart_numerator(n)?;
            let qt = q.dilate_chart_numerator(n)?;
            VectorField::new(qt - &u * &pt, -(&v * &pt))?
        }
        ChartId::U2 | ChartId::V2 => {
            let pt = p.swap_vars().dilate_chart_numerator(n)?;
            let qt = q.swap_vars().dilate_chart_numerator(n)?;
            VectorField::new(pt - &u * &qt, -(&v * &qt))?
        }
    };
    let field = match chart {
        ChartId::V1 | ChartId::V2 if n % 2 == 0 => field.scale(&-Rational::one())?,
        _ => field,
    };
    Ok(ChartField { chart, field, n_used: n })
}

impl VectorField {
    fn effective_degree_check(&self, n: u32) -> Result<()> {
        let d = self.effective_degree();
        if d > n {
            Err(Error::DegreeTooLow { n, degree: d })
        } else {
            Ok(())
        }
    }
}

/// One equilibrium on the circle at infinity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfiniteEquilibrium {
    pub chart: ChartId,
    pub u: RealRoot,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfinityReport {
    pub n_used: u32,
    pub equilibria: Vec<InfiniteEquilibrium>,
    pub line_of_equilibria: bool,
}

impl InfinityReport {
    /// Whether the origin of `U2` (the direction of the `y` axis) is an equilibrium.
    pub fn has_u2_origin(&self) -> bool {
        self.equilibria.iter().any(|e| e.chart == ChartId::U2)
    }
}

pub fn infinite_equilibria(vf: &VectorField) -> InfinityReport {
    infinite_equilibria_with_degree(vf, vf.effective_degree()).expect("effective degree is valid")
}

/// Equilibria on `v = 0` in `U1`, plus the origin of `U2` when it is one.
pub fn infinite_equilibria_with_degree(vf: &VectorField, n: u32) -> Result<InfinityReport> {
    let u1 = chart_field_with_degree(vf, ChartId::U1, n)?;
    let u2 = chart_field_with_degree(vf, ChartId::U2, n)?;
    let line = is_line_of_equilibria(&u1) && is_line_of_equilibria(&u2);
    let mut equilibria = Vec::new();
    if !line {
        let f1 = UPoly::restrict(&u1.field.p, Var::Y);
        for (root, multiplicity) in real_roots(&f1) {
            equilibria.push(InfiniteEquilibrium {
                chart: ChartId::U1,
                u: root,
                multiplicity,
            });
        }
        let f2 = UPoly::restrict(&u2.field.p, Var::Y);
        let zero_mult = f2.coeffs().iter().take_while(|c| c.is_zero()).count() as u32;
        if zero_mult > 0 {
            equilibria.push(InfiniteEquilibrium {
                chart: ChartId::U2,
                u: RealRoot::Exact(Rational::zero()),
                multiplicity: zero_mult,
            });
        }
    }
    Ok(InfinityReport {
        n_used: n,
        equilibria,
        line_of_equilibria: line,
    })
}

fn is_line_of_equilibria(cf: &ChartField) -> bool {
    cf.field.p.divisible_by(Var::Y, 1) && cf.field.q.divisible_by(Var::Y, 1)
}

/// Jacobian of `(p, q)` at an exact point, row-major.
pub fn jacobian_at(vf: &VectorField, point: (&Rational, &Rational)) -> Matrix2 {
    let (x, y) = point;
    [
        [vf.p.partial(Var::X).eval(x, y), vf.p.partial(Var::Y).eval(x, y)],
        [vf.q.partial(Var::X).eval(x, y), vf.q.partial(Var::Y).eval(x, y)],
    ]
}

/// Removes the common factor `v` from both components (time rescaling when
/// the circle at infinity is filled with equilibria).
pub fn rescale_infinity_line(cf: &ChartField) -> Result<ChartField> {
    let p = cf.field.p.divide_monomial(Var::Y, 1)?;
    let q = cf.field.q.divide_monomial(Var::Y, 1)?;
    Ok(ChartField {
        chart: cf.chart,
        field: VectorField::new(p, q)?,
        n_used: cf.n_used,
    })
}

/// `(−1)^(n−1)` as a rational.
pub fn v_chart_sign(n: u32) -> Rational {
    if n % 2 == 1 {
        Rational::one()
    } else {
        -rat(1)
    }
}
