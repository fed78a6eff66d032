//! Blow-up machinery for degenerate equilibria at the origin.
//!
//! Fields are always written in local coordinates `(u, v)` (the `x`/`y`
//! slots of [`Poly2`]). Every transformation returns a new field; a
//! [`BlowupChain`] keeps the full list of intermediate systems.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{parse_rational, rat, rational_text, Matrix2, Poly2, Rational, Var, VectorField};

/// Maximum number of steps in a [`BlowupChain`].
pub const MAX_CHAIN_DEPTH: usize = 8;

/// Twist parameters tried, in order, when the vertical direction is characteristic.
pub fn twist_search_order() -> [Rational; 4] {
    [rat(1), rat(-1), rat(2), rat(-2)]
}

/// `R_n = P_n·v − Q_n·u` at an equilibrium at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicPoly {
    pub r: Poly2,
    /// Lowest order `n` of the field's homogeneous parts.
    pub order: u32,
    /// `u = 0` is a characteristic direction (`r(0, 1) = 0`).
    pub vertical_is_characteristic: bool,
    /// `r ≡ 0`: every direction is characteristic.
    pub all_characteristic: bool,
}

pub fn characteristic_directions(vf: &VectorField) -> Result<CharacteristicPoly> {
    let zero = Rational::zero();
    if !vf.is_equilibrium(&zero, &zero) {
        return Err(Error::NotEquilibrium);
    }
    let n = vf.order().expect("nonzero field has an order");
    let pn = vf.p.homogeneous_part(n);
    let qn = vf.q.homogeneous_part(n);
    let r = &pn * &Poly2::y() - &qn * &Poly2::x();
    let vertical = r.eval(&zero, &Rational::one()).is_zero();
    let all = r.is_zero();
    Ok(CharacteristicPoly {
        r,
        order: n,
        vertical_is_characteristic: vertical,
        all_characteristic: all,
    })
}

/// General linear change of coordinates `(x, y) = M·(u, v)`.
pub fn linear_change(vf: &VectorField, m: &Matrix2) -> Result<VectorField> {
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det.is_zero() {
        return Err(Error::SingularChange);
    }
    let u = Poly2::x();
    let v = Poly2::y();
    let sx = u.scale(&m[0][0]) + v.scale(&m[0][1]);
    let sy = u.scale(&m[1][0]) + v.scale(&m[1][1]);
    let p = vf.p.substitute(&sx, &sy);
    let q = vf.q.substitute(&sx, &sy);
    // (u̇, v̇) = M⁻¹ (ẋ, ẏ)
    let inv = [
        [&m[1][1] / &det, -&m[0][1] / &det],
        [-&m[1][0] / &det, &m[0][0] / &det],
    ];
    VectorField::new(
        p.scale(&inv[0][0]) + q.scale(&inv[0][1]),
        p.scale(&inv[1][0]) + q.scale(&inv[1][1]),
    )
}

/// Twist `(x, y) = (u + α·v, v)`, which moves the direction `x = α·y` onto
/// the vertical axis `u = 0`.
pub fn twist(vf: &VectorField, alpha: &Rational) -> Result<VectorField> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    linear_change(vf, &twist_matrix(alpha))
}

fn twist_matrix(alpha: &Rational) -> Matrix2 {
    [[Rational::one(), alpha.clone()], [Rational::zero(), Rational::one()]]
}

/// Translation `(x, y) = (u + a, v + b)`.
pub fn translate(vf: &VectorField, a: &Rational, b: &Rational) -> Result<VectorField> {
    let sx = Poly2::x() + Poly2::constant(a.clone());
    let sy = Poly2::y() + Poly2::constant(b.clone());
    VectorField::new(vf.p.substitute(&sx, &sy), vf.q.substitute(&sx, &sy))
}

/// Vertical blow-up `(u, v) = (u1, u1·v1)`:
/// `u̇1 = u̇∘σ`, `v̇1 = (v̇∘σ − v1·u̇∘σ) / u1`.
pub fn vertical_blowup(vf: &VectorField) -> Result<VectorField> {
    let u1 = Poly2::x();
    let v1 = Poly2::y();
    let sv = &u1 * &v1;
    let pu = vf.p.substitute(&u1, &sv);
    let qv = vf.q.substitute(&u1, &sv);
    let numer = qv - &v1 * &pu;
    let q = numer.divide_monomial(Var::X, 1)?;
    VectorField::new(pu, q)
}

/// Divides both components by `var^k`.
pub fn time_rescale(vf: &VectorField, var: Var, k: u32) -> Result<VectorField> {
    VectorField::new(vf.p.divide_monomial(var, k)?, vf.q.divide_monomial(var, k)?)
}

/// Largest `k` such that `var^k` divides both components.
pub fn common_power(vf: &VectorField, var: Var) -> u32 {
    let mut k = 0;
    while vf.p.divisible_by(var, k + 1) && vf.q.divisible_by(var, k + 1) {
        k += 1;
    }
    k
}

/// First twist parameter in [`twist_search_order`] after which `u = 0` is
/// not characteristic.
pub fn choose_twist(vf: &VectorField) -> Result<Rational> {
    for alpha in twist_search_order() {
        let twisted = twist(vf, &alpha)?;
        if !characteristic_directions(&twisted)?.vertical_is_characteristic {
            return Ok(alpha);
        }
    }
    Err(Error::NoUsableTwist)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    Twist {
        #[serde(serialize_with = "ser_rational")]
        alpha: Rational,
    },
    LinearChange {
        #[serde(serialize_with = "ser_matrix")]
        matrix: Matrix2,
    },
    Translate {
        #[serde(serialize_with = "ser_rational")]
        du: Rational,
        #[serde(serialize_with = "ser_rational")]
        dv: Rational,
    },
    VerticalBlowup,
    TimeRescale {
        var: Var,
        k: u32,
    },
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_text(r))
}

fn ser_matrix<S: serde::Serializer>(m: &Matrix2, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::poly::matrix_text(m).serialize(s)
}

impl StepKind {
    pub fn apply(&self, vf: &VectorField) -> Result<VectorField> {
        match self {
            StepKind::Twist { alpha } => twist(vf, alpha),
            StepKind::LinearChange { matrix } => linear_change(vf, matrix),
            StepKind::Translate { du, dv } => translate(vf, du, dv),
            StepKind::VerticalBlowup => vertical_blowup(vf),
            StepKind::TimeRescale { var, k } => time_rescale(vf, *var, *k),
        }
    }
}

impl StepKind {
    /// Parses one step: `blowup`, `rescale:u:K`, `rescale:v:K`, `twist:A`,
    /// `translate:A:B` or `linear:A:B:C:D` (matrix rows `[A, B], [C, D]`).
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split(':').map(str::trim).collect();
        let bad = || Error::Parse(format!("invalid step `{}`", text.trim()));
        let num = |s: &str| parse_rational(s).map_err(|_| bad());
        match parts.as_slice() {
            ["blowup"] => Ok(StepKind::VerticalBlowup),
            ["rescale", var, k] => {
                let var = match *var {
                    "u" | "x" => Var::X,
                    "v" | "y" => Var::Y,
                    _ => return Err(bad()),
                };
                let k: u32 = k.parse().map_err(|_| bad())?;
                Ok(StepKind::TimeRescale { var, k })
            }
            ["twist", a] => Ok(StepKind::Twist { alpha: num(a)? }),
            ["translate", a, b] => Ok(StepKind::Translate { du: num(a)?, dv: num(b)? }),
            ["linear", a, b, c, d] => Ok(StepKind::LinearChange {
                matrix: [[num(a)?, num(b)?], [num(c)?, num(d)?]],
            }),
            _ => Err(bad()),
        }
    }

    /// Comma-separated list of [`StepKind::parse`] items.
    pub fn parse_list(text: &str) -> Result<Vec<Self>> {
        text.split(',').filter(|s| !s.trim().is_empty()).map(Self::parse).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupStep {
    pub kind: StepKind,
    pub input: VectorField,
    pub output: VectorField,
}

/// An auditable sequence of transformations starting from `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupChain {
    pub start: VectorField,
    pub steps: Vec<BlowupStep>,
}

impl BlowupChain {
    pub fn new(start: VectorField) -> Self {
        Self { start, steps: Vec::new() }
    }

    pub fn last(&self) -> &VectorField {
        self.steps.last().map_or(&self.start, |s| &s.output)
    }

    /// Appends one step. Errors are tagged with the (1-based) stage index.
    pub fn apply(&mut self, kind: StepKind) -> Result<&VectorField> {
        let stage = self.steps.len() + 1;
        if stage > MAX_CHAIN_DEPTH {
            return Err(Error::ChainTooDeep(MAX_CHAIN_DEPTH));
        }
        let input = self.last().clone();
        let output = kind.apply(&input).map_err(|e| Error::Stage {
            stage,
            source: Box::new(e),
        })?;
        self.steps.push(BlowupStep { kind, input, output });
        Ok(self.last())
    }

    /// Vertical blow-up, preceded by a twist from the search order when the
    /// vertical direction is characteristic (and not every direction is).
    pub fn blowup_with_twist(&mut self) -> Result<&VectorField> {
        let ch = characteristic_directions(self.last()).map_err(|e| Error::Stage {
            stage: self.steps.len() + 1,
            source: Box::new(e),
        })?;
        if ch.vertical_is_characteristic && !ch.all_characteristic {
            let alpha = choose_twist(self.last())?;
            self.apply(StepKind::Twist { alpha })?;
        }
        self.apply(StepKind::VerticalBlowup)
    }

    /// Removes the largest common power of `u` (no-op when there is none).
    pub fn rescale_common_u(&mut self) -> Result<&VectorField> {
        let k = common_power(self.last(), Var::X);
        if k == 0 {
            return Ok(self.last());
        }
        self.apply(StepKind::TimeRescale { var: Var::X, k })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let field = |f: &VectorField| {
            serde_json::json!({
                "u_dot": f.p.to_text("u", "v"),
                "v_dot": f.q.to_text("u", "v"),
            })
        };
        serde_json::json!({
            "start": field(&self.start),
            "steps": self.steps.iter().enumerate().map(|(k, s)| {
                serde_json::json!({
                    "stage": k + 1,
                    "step": s.kind,
                    "output": field(&s.output),
                })
            }).collect::<Vec<_>>(),
        })
    }
}
