use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::curve::{CurveKind, LiftedCurve};
use super::intersect::self_intersections;
use super::CurveError;
use crate::maslov::{loop_maslov, LineSlope};
use crate::pillowcase::{winding_numbers, z_of_loop, DeckElement};
use crate::Z4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnobstructedReport {
    pub ok: bool,
    pub essential: bool,
    pub double_points: usize,
    /// Parameter ranges of nullhomotopic subloops.
    pub fishtails: Vec<(f64, f64)>,
}

/// Looks for fishtails: subloops at a double point that close up in the
/// cover and enclose no lattice point.
pub fn check_unobstructed(c: &LiftedCurve) -> Result<UnobstructedReport, CurveError> {
    let doubles = self_intersections(c)?;
    let mut fishtails = Vec::new();
    let n = c.period();
    for x in &doubles {
        // c(s0) = h·c(s1), so the subloop [s0, s1] closes by h⁻¹.
        let mut loops = vec![(x.s0, x.s1, x.lift_offset.inverse())];
        if c.kind == CurveKind::Circle {
            loops.push((x.s1, x.s0 + n, c.closure.compose(x.lift_offset)));
        }
        for (a, b, closure) in loops {
            if !closure.is_identity() {
                continue;
            }
            let pts = c.path(a, b);
            if winding_numbers(&pts, DeckElement::IDENTITY)?.is_empty() {
                fishtails.push((a, b));
            }
        }
    }
    let essential = match c.kind {
        CurveKind::Arc => true,
        CurveKind::Circle => {
            !c.closure.is_identity() || !winding_numbers(&c.vertices, DeckElement::IDENTITY)?.is_empty()
        }
    };
    Ok(UnobstructedReport { ok: essential && fishtails.is_empty(), essential, double_points: doubles.len(), fishtails })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictedReport {
    pub ok: bool,
    /// μ(c, ℓ₁) over one period (circles).
    pub maslov: Option<i64>,
    pub z: Option<Z4>,
    pub reason: Option<String>,
}

/// Circles need `μ(c, ℓ₁) + z(c) ≡ 0 mod 4`; arcs need corner endpoints
/// and no fishtails.
pub fn check_restricted(c: &LiftedCurve) -> Result<RestrictedReport, CurveError> {
    let unobstructed = check_unobstructed(c)?;
    match c.kind {
        CurveKind::Circle => {
            let mu = loop_maslov(c, LineSlope::SLOPE_ONE).map_err(CurveError::from)?;
            let z = z_of_loop(&c.vertices, c.closure)?;
            let total = Z4::new(mu) + z;
            let reason = if !unobstructed.ok {
                Some("curve is obstructed".to_string())
            } else if total != Z4::ZERO {
                Some(format!("μ + z = {mu} + {z} ≢ 0 mod 4"))
            } else {
                None
            };
            Ok(RestrictedReport { ok: reason.is_none(), maslov: Some(mu), z: Some(z), reason })
        }
        CurveKind::Arc => {
            let ends_ok = c.vertices[0].is_corner_lift() && c.vertices[c.segment_count()].is_corner_lift();
            let slopes_ok = c.limiting_slopes.is_some_and(|(a, b)| a.is_finite() && b.is_finite());
            let reason = if !ends_ok {
                Some("arc endpoints are not corner lifts".to_string())
            } else if !slopes_ok {
                Some("arc has vertical limiting slopes".to_string())
            } else if !unobstructed.ok {
                Some("arc contains a fishtail".to_string())
            } else {
                None
            };
            Ok(RestrictedReport { ok: reason.is_none(), maslov: None, z: None, reason })
        }
    }
}

/// `|Δθ| / 2π` over one period of a circle.
pub fn vertical_degree(c: &LiftedCurve) -> Result<u64, CurveError> {
    if c.kind != CurveKind::Circle {
        return Err(CurveError::NotACircle { label: c.label.clone() });
    }
    let d = (c.vertices[c.segment_count()].theta - c.vertices[0].theta).abs() / (2.0 * PI);
    if (d - d.round()).abs() > 1e-6 {
        return Err(CurveError::NonIntegralDegree { label: c.label.clone(), value: d });
    }
    Ok(d.round() as u64)
}

/// Every edge has slope of modulus above 1 and γ stays in one open strip
/// `(kπ, (k+1)π)`.
pub fn is_vertically_monotonic(c: &LiftedCurve) -> bool {
    if c.kind != CurveKind::Circle || !(c.closure.sigma == 1 && c.closure.m == 0) {
        return false;
    }
    let strip = (c.vertices[0].gamma / PI).floor();
    let in_strip = c.vertices.iter().all(|p| {
        let x = p.gamma / PI - strip;
        x > 0.0 && x < 1.0
    });
    let steep = (0..c.segment_count() as i64).all(|i| {
        let d = c.direction(i);
        d.theta.abs() > d.gamma.abs()
    });
    in_strip && steep
}
