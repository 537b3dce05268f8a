use std::f64::consts::PI;

use nalgebra::Vector3;

use super::psi::{boundary_images, BoxPoint};
use super::{KnotError, TorusSpec};
use crate::pillowcase::{DeckElement, LiftPoint};

/// Below this norm two traceless directions are treated as parallel.
const PARALLEL_TOL: f64 = 1e-9;
/// Allowed distance of `ρ(c)` from the plane of `ρ(a)` and `ρ(b)`.
pub const COPLANAR_TOL: f64 = 1e-7;

/// Pillowcase coordinates `(γ, θ)` with `γ ∈ [0, π]` of the restriction of
/// the representation at a box point.
///
/// `ρ(a)` is rotated to `i` and `ρ(b)` into the upper half of the `i, j`
/// plane; `γ` is then the angle from `ρ(a)` to `ρ(b)` and `θ` the angle from
/// `ρ(a)` to `ρ(c)`. When `ρ(b) = ±ρ(a)`, `ρ(c)` fixes the plane instead.
pub fn pillow_coords(spec: &TorusSpec, x: BoxPoint) -> Result<LiftPoint, KnotError> {
    let [a, b, c] = boundary_images(spec, x);
    let (a, b, c) = (a.vector().normalize(), b.vector().normalize(), c.vector().normalize());
    let ab = a.cross(&b);
    let ac = a.cross(&c);
    let gamma = ab.norm().atan2(a.dot(&b));
    let normal: Option<Vector3<f64>> = if ab.norm() > PARALLEL_TOL {
        Some(ab / ab.norm())
    } else if ac.norm() > PARALLEL_TOL {
        Some(ac / ac.norm())
    } else {
        None
    };
    let theta = match normal {
        Some(n) => {
            let off = c.dot(&n).abs();
            if off > COPLANAR_TOL {
                return Err(KnotError::ProjectionDefect { at: [x[0], x[1], x[2]], residual: off });
            }
            ac.dot(&n).atan2(a.dot(&c))
        }
        None => {
            if a.dot(&c) > 0.0 {
                0.0
            } else {
                PI
            }
        }
    };
    Ok(LiftPoint::new(gamma, theta))
}

/// The lift of `p` closest to `near`, with the distance moved.
pub fn unfold_next(p: LiftPoint, near: LiftPoint) -> (LiftPoint, f64) {
    let (_, lift) = DeckElement::nearest_translate(p, near);
    (lift, lift.dist(near))
}

/// Continuous lift of the images of a sample sequence.
pub fn unfold(spec: &TorusSpec, samples: &[BoxPoint]) -> Result<Vec<LiftPoint>, KnotError> {
    let mut out: Vec<LiftPoint> = Vec::with_capacity(samples.len());
    for (i, &x) in samples.iter().enumerate() {
        let p = pillow_coords(spec, x)?;
        let lift = match out.last() {
            None => p,
            Some(&prev) => {
                let (lift, d) = unfold_next(p, prev);
                if d > PI / 2.0 {
                    return Err(KnotError::UnfoldJump { sample: i, distance: d });
                }
                lift
            }
        };
        out.push(lift);
    }
    Ok(out)
}
