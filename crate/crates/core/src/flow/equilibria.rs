//! Exact search for finite equilibria other than the origin.
//!
//! Both resultants `Res_y(P, Q)(x)` and `Res_x(P, Q)(y)` are computed over ℚ
//! by evaluation at integer points and interpolation. Every common zero of
//! `P` and `Q` has its `x` among the real roots of the first and its `y`
//! among those of the second. When both resultants vanish only at zero the
//! origin is the sole candidate. Otherwise each rational `x` root is
//! substituted back and the common `y` roots found by a univariate gcd;
//! irrational `x` roots are paired with the `y` roots and accepted when the
//! residual vanishes to working precision.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::roots::{real_roots, RealRoot};
use crate::poly::univariate::UPoly;
use crate::poly::{rat, Poly2, Rational, VectorField};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquilibriumScan {
    /// No finite equilibrium other than the origin.
    OriginOnly,
    Extra { points: Vec<[f64; 2]> },
    Inconclusive { reason: String },
}

impl EquilibriumScan {
    pub fn has_extra(&self) -> bool {
        matches!(self, EquilibriumScan::Extra { .. })
    }
}

/// Coefficients of `p` as a polynomial in `y`, each a polynomial in `x`.
fn coefficients_in_y(p: &Poly2) -> Vec<UPoly> {
    let deg = p.degree().max(0) as usize;
    let mut rows = vec![vec![Rational::zero(); deg + 1]; deg + 1];
    for (m, c) in p.terms() {
        rows[m.j as usize][m.i as usize] += c;
    }
    let mut out: Vec<UPoly> = rows.into_iter().map(UPoly::new).collect();
    while out.len() > 1 && out.last().is_some_and(UPoly::is_zero) {
        out.pop();
    }
    out
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pv;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Sylvester determinant of two univariate coefficient lists (lowest first).
fn sylvester(a: &[Rational], b: &[Rational]) -> Rational {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut mat = vec![vec![Rational::zero(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    determinant(mat)
}

/// Polynomial through `(xs[i], ys[i])` by Newton divided differences.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> UPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut acc = UPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = acc.mul(&UPoly::linear_root(&xs[i])).add(&UPoly::constant(dd[i].clone()));
    }
    acc
}

/// `Res_y(P, Q)` as a polynomial in `x`.
pub fn resultant_in_y(p: &Poly2, q: &Poly2) -> UPoly {
    let cp = coefficients_in_y(p);
    let cq = coefficients_in_y(q);
    let bound = (p.degree().max(0) * q.degree().max(0)) as i64;
    let xs: Vec<Rational> = (0..=bound).map(rat).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let a: Vec<Rational> = cp.iter().map(|c| c.eval(x)).collect();
            let b: Vec<Rational> = cq.iter().map(|c| c.eval(x)).collect();
            sylvester(&a, &b)
        })
        .collect();
    interpolate(&xs, &ys)
}

fn restrict_x(p: &Poly2, a: &Rational) -> UPoly {
    let deg = p.degree().max(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        let mut v = c.clone();
        for _ in 0..m.i {
            v *= a;
        }
        coeffs[m.j as usize] += v;
    }
    UPoly::new(coeffs)
}

fn only_zero(roots: &[(RealRoot, u32)]) -> bool {
    roots.iter().all(|(r, _)| r.is_zero())
}

fn residual_ok(vf: &VectorField, x: f64, y: f64) -> bool {
    let scale = |p: &Poly2| -> f64 {
        p.terms()
            .map(|(m, c)| crate::poly::rational_to_f64(c).abs() * x.abs().powi(m.i as i32) * y.abs().powi(m.j as i32))
            .sum::<f64>()
            .max(1.0)
    };
    vf.p.eval_f64(x, y).abs() <= 1e-7 * scale(&vf.p) && vf.q.eval_f64(x, y).abs() <= 1e-7 * scale(&vf.q)
}

pub fn scan_finite_equilibria(vf: &VectorField) -> EquilibriumScan {
    let rx = resultant_in_y(&vf.p, &vf.q);
    let ry = resultant_in_y(&vf.p.swap_vars(), &vf.q.swap_vars());
    if rx.is_zero() || ry.is_zero() {
        return EquilibriumScan::Inconclusive {
            reason: "the components share a nonconstant factor".into(),
        };
    }
    let xs = real_roots(&rx);
    let ys = real_roots(&ry);
    if only_zero(&xs) && only_zero(&ys) {
        return EquilibriumScan::OriginOnly;
    }
    let mut points: Vec<[f64; 2]> = Vec::new();
    for (xr, _) in &xs {
        match xr {
            RealRoot::Exact(a) => {
                let pa = restrict_x(&vf.p, a);
                let qa = restrict_x(&vf.q, a);
                if pa.is_zero() && qa.is_zero() {
                    return EquilibriumScan::Inconclusive {
                        reason: format!("the vertical line x = {a} consists of equilibria"),
                    };
                }
                let g = if pa.is_zero() {
                    qa
                } else if qa.is_zero() {
                    pa
                } else {
                    pa.gcd(&qa)
                };
                for (yr, _) in real_roots(&g) {
                    if !(a.is_zero() && yr.is_zero()) {
                        points.push([xr.to_f64(), yr.to_f64()]);
                    }
                }
            }
            _ => {
                let x = xr.to_f64();
                for (yr, _) in &ys {
                    let y = yr.to_f64();
                    if residual_ok(vf, x, y) {
                        points.push([x, y]);
                    }
                }
            }
        }
    }
    if points.is_empty() {
        EquilibriumScan::OriginOnly
    } else {
        EquilibriumScan::Extra { points }
    }
}
