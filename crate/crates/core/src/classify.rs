//! Local classification of equilibria from the linear part, with a
//! center-manifold refinement for semi-hyperbolic points.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::compactify::jacobian_at;
use crate::desing::{linear_change, translate};
use crate::error::{Error, Result};
use crate::poly::roots::RealRoot;
use crate::poly::{rat, rational_text, Matrix2, Poly2, Rational, VectorField};

/// Highest order of the center-manifold expansion.
pub const CENTER_MANIFOLD_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    Unstable,
}

impl Stability {
    fn from_sign(positive: bool) -> Self {
        if positive {
            Stability::Unstable
        } else {
            Stability::Stable
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", content = "stability")]
#[allow(non_camel_case_types)]
pub enum EquilibriumClass {
    HyperbolicSaddle,
    HyperbolicNode(Stability),
    HyperbolicFocus(Stability),
    LinearCenterCandidate,
    /// Exactly one zero eigenvalue, not yet refined.
    SemiHyperbolic,
    SemiHyperbolicSaddle,
    SemiHyperbolicNode(Stability),
    SemiHyperbolicSaddleNode,
    /// Center-manifold dynamics vanish through the truncation order.
    SemiHyperbolicInconclusive,
    Nilpotent_NeedsBlowup,
    LinearlyZero_NeedsBlowup,
}

/// Eigen-data of a 2x2 rational matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub trace: Rational,
    pub det: Rational,
    pub discriminant: Rational,
    pub is_real: bool,
    /// Real eigenvalues in increasing order; `None` for a complex pair.
    pub lambda1: Option<RealRoot>,
    pub lambda2: Option<RealRoot>,
}

impl Spectrum {
    pub fn of(j: &Matrix2) -> Self {
        let trace = &j[0][0] + &j[1][1];
        let det = &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0];
        let discriminant = &trace * &trace - rat(4) * &det;
        let is_real = !discriminant.is_negative();
        let (lambda1, lambda2) = if is_real {
            let half = &trace / rat(2);
            let h = Rational::one() / rat(2);
            (
                Some(RealRoot::from_sqrt(half.clone(), -h.clone(), &discriminant)),
                Some(RealRoot::from_sqrt(half, h, &discriminant)),
            )
        } else {
            (None, None)
        };
        Self {
            trace,
            det,
            discriminant,
            is_real,
            lambda1,
            lambda2,
        }
    }

    /// Eigenvalues as display strings; complex pairs as `re ± i*sqrt(m)`.
    pub fn eigen_strings(&self) -> [String; 2] {
        match (&self.lambda1, &self.lambda2) {
            (Some(a), Some(b)) => [a.text(), b.text()],
            _ => {
                let re = &self.trace / rat(2);
                let im = RealRoot::from_sqrt(Rational::zero(), Rational::one() / rat(2), &-self.discriminant.clone());
                let re_t = rational_text(&re);
                [format!("{re_t} - i*{}", im.text()), format!("{re_t} + i*{}", im.text())]
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "trace": rational_text(&self.trace),
            "det": rational_text(&self.det),
            "is_real": self.is_real,
            "eigenvalues": self.eigen_strings(),
        })
    }
}

/// Coarse class from trace, determinant and discriminant.
pub fn classify_from_jacobian(j: &Matrix2) -> EquilibriumClass {
    let s = Spectrum::of(j);
    if j.iter().flatten().all(Zero::is_zero) {
        return EquilibriumClass::LinearlyZero_NeedsBlowup;
    }
    if s.det.is_negative() {
        EquilibriumClass::HyperbolicSaddle
    } else if s.det.is_zero() {
        if s.trace.is_zero() {
            EquilibriumClass::Nilpotent_NeedsBlowup
        } else {
            EquilibriumClass::SemiHyperbolic
        }
    } else if s.trace.is_zero() {
        EquilibriumClass::LinearCenterCandidate
    } else if s.is_real {
        EquilibriumClass::HyperbolicNode(Stability::from_sign(s.trace.is_positive()))
    } else {
        EquilibriumClass::HyperbolicFocus(Stability::from_sign(s.trace.is_positive()))
    }
}

/// Result of the center-manifold reduction at a semi-hyperbolic point.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterManifoldReduction {
    /// Nonzero eigenvalue.
    pub lambda: Rational,
    /// Coefficients `h_k` of the center manifold `y = Σ h_k x^k`, index = power.
    pub manifold: Vec<Rational>,
    /// Coefficients of the reduced dynamics `ẋ = Σ a_k x^k`, index = power.
    pub reduced: Vec<Rational>,
    pub class: EquilibriumClass,
}

/// Classifies a semi-hyperbolic equilibrium from its center-manifold dynamics.
pub fn refine_semihyperbolic(vf: &VectorField, point: (&Rational, &Rational)) -> Result<EquilibriumClass> {
    Ok(center_manifold_reduction(vf, point)?.class)
}

pub fn center_manifold_reduction(
    vf: &VectorField,
    point: (&Rational, &Rational),
) -> Result<CenterManifoldReduction> {
    if !vf.is_equilibrium(point.0, point.1) {
        return Err(Error::NotEquilibrium);
    }
    let j = jacobian_at(vf, point);
    let s = Spectrum::of(&j);
    if !s.det.is_zero() || s.trace.is_zero() {
        return Err(Error::NotSemiHyperbolic);
    }
    let lambda = s.trace.clone();
    let v0 = null_vector(&j);
    let shifted = [
        [&j[0][0] - &lambda, j[0][1].clone()],
        [j[1][0].clone(), &j[1][1] - &lambda],
    ];
    let v1 = null_vector(&shifted);
    let t: Matrix2 = [[v0.0, v1.0], [v0.1, v1.1]];
    // center direction first, hyperbolic direction second
    let local = linear_change(&translate(vf, point.0, point.1)?, &t)?;
    let n = CENTER_MANIFOLD_ORDER;

    let mut h = vec![Rational::zero(); n + 1];
    for k in 2..=n {
        let g = compose_series(&local.q, &h, n);
        let f = compose_series(&local.p, &h, n);
        let dh = series_derivative(&h);
        let hf = series_mul(&dh, &f, n);
        let residual = &g[k] - &hf[k];
        h[k] = -residual / &lambda;
    }
    let reduced = compose_series(&local.p, &h, n);
    let class = match reduced.iter().enumerate().skip(1).find(|(_, c)| !c.is_zero()) {
        None => EquilibriumClass::SemiHyperbolicInconclusive,
        Some((m, a)) if m % 2 == 1 => {
            if (a * &lambda).is_negative() {
                EquilibriumClass::SemiHyperbolicSaddle
            } else {
                EquilibriumClass::SemiHyperbolicNode(Stability::from_sign(lambda.is_positive()))
            }
        }
        Some(_) => EquilibriumClass::SemiHyperbolicSaddleNode,
    };
    Ok(CenterManifoldReduction {
        lambda,
        manifold: h,
        reduced,
        class,
    })
}

/// Coarse classification, refined through the center manifold when
/// exactly one eigenvalue vanishes.
pub fn classify_equilibrium(vf: &VectorField, point: (&Rational, &Rational)) -> Result<EquilibriumClass> {
    if !vf.is_equilibrium(point.0, point.1) {
        return Err(Error::NotEquilibrium);
    }
    match classify_from_jacobian(&jacobian_at(vf, point)) {
        EquilibriumClass::SemiHyperbolic => refine_semihyperbolic(vf, point),
        c => Ok(c),
    }
}

/// A nonzero vector in the kernel of a singular, nonzero 2x2 matrix.
fn null_vector(m: &Matrix2) -> (Rational, Rational) {
    let row = if !m[0][0].is_zero() || !m[0][1].is_zero() {
        &m[0]
    } else {
        &m[1]
    };
    let (a, b) = (row[1].clone(), -row[0].clone());
    // first nonzero component positive
    if a.is_negative() || (a.is_zero() && b.is_negative()) {
        (-a, -b)
    } else {
        (a, b)
    }
}

/// `p(x, h(x))` truncated at order `n`.
fn compose_series(p: &Poly2, h: &[Rational], n: usize) -> Vec<Rational> {
    let max_j = p.degree_in(crate::poly::Var::Y).max(0) as usize;
    let mut hp: Vec<Vec<Rational>> = Vec::with_capacity(max_j + 1);
    let mut one = vec![Rational::zero(); n + 1];
    one[0] = Rational::one();
    hp.push(one);
    for k in 1..=max_j {
        let next = series_mul(&hp[k - 1], h, n);
        hp.push(next);
    }
    let mut out = vec![Rational::zero(); n + 1];
    for (m, c) in p.terms() {
        let i = m.i as usize;
        if i > n {
            continue;
        }
        for (k, hc) in hp[m.j as usize].iter().enumerate() {
            if i + k <= n && !hc.is_zero() {
                out[i + k] += c * hc;
            }
        }
    }
    out
}

fn series_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if i + j > n {
                break;
            }
            out[i + j] += ca * cb;
        }
    }
    out
}

fn series_derivative(a: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len()];
    for k in 1..a.len() {
        out[k - 1] = &a[k] * rat(k as i64);
    }
    out
}
