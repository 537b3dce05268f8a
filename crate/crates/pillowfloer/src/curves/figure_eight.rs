use std::f64::consts::{FRAC_PI_2, TAU};

use super::curve::LiftedCurve;
use super::CurveError;
use crate::pillowcase::{DeckElement, LiftPoint, PerturbationFunction};

/// Default sample count for L₀.
pub const DEFAULT_SAMPLES: usize = 512;

/// The figure-eight curve L₀^{ε,g}, sampled uniformly in `t ∈ [0, 2π]`.
///
/// `t ↦ (t + ε sin t + π/2, t - ε sin t + π/2 + g(t + ε sin t + π/2))`,
/// closed by the translation `(1, 1, +)`.
pub fn figure_eight(eps: f64, g: &PerturbationFunction, samples: usize) -> Result<LiftedCurve, CurveError> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(CurveError::BadEpsilon(eps));
    }
    if samples < 64 {
        return Err(CurveError::TooFewVertices { label: "L0".into(), count: samples });
    }
    let vertices = (0..=samples)
        .map(|i| {
            let t = TAU * i as f64 / samples as f64;
            let gamma = t + eps * t.sin() + FRAC_PI_2;
            LiftPoint::new(gamma, t - eps * t.sin() + FRAC_PI_2 + g.eval(gamma))
        })
        .collect();
    LiftedCurve::circle("L0", vertices, DeckElement::translation(1, 1))
}

/// Converts a figure-eight parameter `s` back to `t ∈ [0, 2π)`.
pub fn figure_eight_time(c: &LiftedCurve, s: f64) -> f64 {
    (s / c.period()).rem_euclid(1.0) * TAU
}
