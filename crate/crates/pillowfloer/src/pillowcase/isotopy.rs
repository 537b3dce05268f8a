//! Vertexwise maps of the cover that commute with the deck action.

use std::f64::consts::PI;

use num_integer::Integer;

use super::perturbation::PerturbationFunction;
use super::point::LiftPoint;
use super::PillowError;

/// The isotopy `c_g(·, s)`: `(γ, θ) ↦ (γ, θ + s·g(γ))`.
pub fn isotopy_cg(p: LiftPoint, g: &PerturbationFunction, s: f64) -> LiftPoint {
    LiftPoint::new(p.gamma, p.theta + s * g.eval(p.gamma))
}

/// The collar shear `(γ, θ) ↦ (γ, θ + 2f(γ + π))`.
pub fn shear(p: LiftPoint, f: &PerturbationFunction) -> LiftPoint {
    LiftPoint::new(p.gamma, p.theta + 2.0 * f.eval(p.gamma + PI))
}

/// The `(p,q)` shear `(γ, θ) ↦ (γ - qφ(pγ+qθ), θ + pφ(pγ+qθ))`.
///
/// It moves points along the level sets of `pγ + qθ`, so it preserves area.
pub fn pq_shear(pt: LiftPoint, p: i64, q: i64, phi: &PerturbationFunction) -> Result<LiftPoint, PillowError> {
    if p.gcd(&q) != 1 {
        return Err(PillowError::NonCoprime { p, q });
    }
    let x = phi.eval(p as f64 * pt.gamma + q as f64 * pt.theta);
    Ok(LiftPoint::new(pt.gamma - q as f64 * x, pt.theta + p as f64 * x))
}
