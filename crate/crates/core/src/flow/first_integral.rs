use super::integrator::Trajectory;
use crate::error::{Error, Result};
use crate::poly::{Poly2, Var, VectorField};

/// `∂H/∂x · p + ∂H/∂y · q`.
pub fn lie_derivative(vf: &VectorField, h: &Poly2) -> Poly2 {
    &h.partial(Var::X) * &vf.p + &h.partial(Var::Y) * &vf.q
}

/// Largest `|H(x(t)) − H(x(0))|` along `trajectory`, after checking
/// symbolically that `H` is a first integral of `vf`.
pub fn first_integral_check(vf: &VectorField, h: &Poly2, trajectory: &Trajectory) -> Result<f64> {
    let lie = lie_derivative(vf, h);
    if !lie.is_zero() {
        return Err(Error::NotConserved(lie.to_text("x", "y")));
    }
    let Some(&(_, z0)) = trajectory.points.first() else {
        return Ok(0.0);
    };
    let h0 = h.eval_f64(z0[0], z0[1]);
    Ok(trajectory
        .points
        .iter()
        .map(|(_, z)| (h.eval_f64(z[0], z[1]) - h0).abs())
        .fold(0.0, f64::max))
}
