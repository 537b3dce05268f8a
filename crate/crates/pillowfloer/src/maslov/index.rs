use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use super::MaslovError;
use crate::curves::{turning_angle, CurveKind, LiftedCurve};
use crate::pillowcase::{canonicalize, LiftPoint};

/// Offset added to the reference line so paths that start or end tangent to
/// it are counted deterministically.
pub const DELTA: f64 = 1e-7;

/// An unoriented line direction, stored as an angle in `[0, π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct LineSlope(f64);

impl LineSlope {
    pub const HORIZONTAL: LineSlope = LineSlope(0.0);
    pub const SLOPE_ONE: LineSlope = LineSlope(FRAC_PI_4);
    pub const VERTICAL: LineSlope = LineSlope(FRAC_PI_2);

    pub fn from_angle(a: f64) -> LineSlope {
        let r = a.rem_euclid(PI);
        LineSlope(if r >= PI { 0.0 } else { r })
    }

    pub fn from_direction(v: LiftPoint) -> LineSlope {
        LineSlope::from_angle(v.angle())
    }

    pub fn angle(self) -> f64 {
        self.0
    }
}

/// Signed passes of the line `target` while a line at angle `a` rotates by
/// `turn` (|turn| < π/2).
fn passes(a: f64, turn: f64, target: f64) -> i64 {
    if turn == 0.0 {
        return 0;
    }
    let (lo, hi, sign) = if turn > 0.0 { (a, a + turn, 1) } else { (a + turn, a, -1) };
    // Count target + kπ in (lo, hi].
    let k_hi = ((hi - target) / PI).floor();
    let k_lo = ((lo - target) / PI).floor();
    sign * (k_hi - k_lo) as i64
}

fn reference(l: LineSlope) -> f64 {
    l.angle() + DELTA
}

/// Maslov index of a polyline relative to the constant line field `l`.
pub fn polyline_maslov(points: &[LiftPoint], l: LineSlope) -> Result<i64, MaslovError> {
    let dirs: Vec<LiftPoint> = points
        .windows(2)
        .filter(|w| w[0].dist(w[1]) > 0.0)
        .map(|w| w[1] - w[0])
        .collect();
    directions_maslov(&dirs, l)
}

fn directions_maslov(dirs: &[LiftPoint], l: LineSlope) -> Result<i64, MaslovError> {
    let target = reference(l);
    let mut total = 0;
    for w in dirs.windows(2) {
        let turn = turning_angle(w[0], w[1]);
        if turn.abs() >= FRAC_PI_2 {
            return Err(MaslovError::NonGenericVertex { angle: turn });
        }
        total += passes(w[0].angle(), turn, target);
    }
    Ok(total)
}

/// Segment indices traversed from `from` to `to`, in order.
fn segment_range(c: &LiftedCurve, from: f64, to: f64) -> Vec<i64> {
    let clamp = |i: i64| match c.kind {
        CurveKind::Arc => i.clamp(0, c.segment_count() as i64 - 1),
        CurveKind::Circle => i,
    };
    if to >= from {
        let a = clamp(from.floor() as i64);
        let b = clamp((to.ceil() as i64 - 1).max(from.floor() as i64));
        (a..=b).collect()
    } else {
        let a = clamp(from.ceil() as i64 - 1);
        let b = clamp((to.floor() as i64).min(from.ceil() as i64 - 1));
        (b..=a).rev().collect()
    }
}

/// Tangent at vertex `i` taken as the bisector of the adjacent segments, if
/// `i` is an interior vertex.
fn vertex_tangent(c: &LiftedCurve, i: i64) -> Option<LiftPoint> {
    if c.kind == CurveKind::Arc && (i <= 0 || i >= c.segment_count() as i64) {
        return None;
    }
    let (a, b) = (c.direction(i - 1), c.direction(i));
    let m = a + b;
    Some(m * (1.0 / m.norm()))
}

fn at_vertex(s: f64) -> Option<i64> {
    ((s - s.round()).abs() < 1e-12).then_some(s.round() as i64)
}

/// Maslov index of the path along `c` from parameter `from` to `to`.
///
/// At an endpoint lying on an interior vertex the tangent is the bisector of
/// the two adjacent segments.
pub fn path_maslov(c: &LiftedCurve, from: f64, to: f64, l: LineSlope) -> Result<i64, MaslovError> {
    if from == to {
        return Ok(0);
    }
    let segs = segment_range(c, from, to);
    let sign = if to >= from { 1.0 } else { -1.0 };
    let mut dirs = Vec::with_capacity(segs.len() + 2);
    if let Some(t) = at_vertex(from).and_then(|i| vertex_tangent(c, i)) {
        dirs.push(t * sign);
    }
    dirs.extend(segs.iter().map(|&i| c.direction(i) * sign));
    if let Some(t) = at_vertex(to).and_then(|i| vertex_tangent(c, i)) {
        dirs.push(t * sign);
    }
    directions_maslov(&dirs, l)
}

/// Maslov index of a circle over one full period.
pub fn loop_maslov(c: &LiftedCurve, l: LineSlope) -> Result<i64, MaslovError> {
    let n = c.segment_count() as i64;
    let dirs: Vec<LiftPoint> = (0..=n).map(|i| c.direction(i)).collect();
    directions_maslov(&dirs, l)
}

/// 1 iff the shortest clockwise rotation from `l0` to `l1` passes `l`.
pub fn triple_index(l0: LineSlope, l1: LineSlope, l: LineSlope) -> Result<u8, MaslovError> {
    let a0 = l0.angle();
    let mut a1 = l1.angle();
    if (a0 - a1).abs() < 1e-12 {
        return Err(MaslovError::EqualLines { l0: a0, l1: a1 });
    }
    while a1 >= a0 {
        a1 -= PI;
    }
    // Clockwise from a0 down to a1 ∈ (a0 - π, a0).
    Ok((-passes(a0, a1 - a0, reference(l))) as u8)
}

/// Maslov index of a polygon with the given sides, listed clockwise.
///
/// Side `k` runs from corner `p_k` to corner `p_{k+1}`; consecutive sides
/// must meet in P.
pub fn mas_polygon(sides: &[Vec<LiftPoint>], l: LineSlope) -> Result<i64, MaslovError> {
    let n = sides.len();
    if sides.iter().any(|s| s.len() < 2) {
        return Err(MaslovError::ChainMismatch { corner: 0 });
    }
    for k in 0..n {
        let end = *sides[k].last().unwrap();
        let start = sides[(k + 1) % n][0];
        if !canonicalize(end).0.approx_eq(canonicalize(start).0, 1e-7) {
            return Err(MaslovError::ChainMismatch { corner: (k + 1) % n });
        }
    }
    let mut sum = 0;
    for k in 0..n {
        sum += polyline_maslov(&sides[k], l)?;
        let prev = &sides[(k + n - 1) % n];
        let incoming = prev[prev.len() - 1] - prev[prev.len() - 2];
        let outgoing = sides[k][1] - sides[k][0];
        sum += triple_index(LineSlope::from_direction(outgoing), LineSlope::from_direction(incoming), l)? as i64;
    }
    Ok(1 - sum)
}

/// A side of an n-gon taken from a curve: the path from `from` to `to`.
#[derive(Clone, Copy, Debug)]
pub struct CurvePath<'a> {
    pub curve: &'a LiftedCurve,
    pub from: f64,
    pub to: f64,
}

/// [`mas_polygon`] for sides given as curve parameter ranges.
pub fn mas_ngon(paths: &[CurvePath<'_>], l: LineSlope) -> Result<i64, MaslovError> {
    let sides: Vec<Vec<LiftPoint>> = paths.iter().map(|p| p.curve.path(p.from, p.to)).collect();
    mas_polygon(&sides, l)
}
