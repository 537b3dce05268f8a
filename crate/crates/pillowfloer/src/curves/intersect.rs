use std::collections::HashMap;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curve::{bbox, CurveKind, LiftedCurve};
use super::CurveError;
use crate::pillowcase::{canonicalize, DeckElement, LiftPoint, PillowPoint, LATTICE_TOL};

/// Default transversality threshold in radians.
pub const ANGLE_TOL: f64 = 1e-6;

/// A transverse crossing `c0(s0) = lift_offset · c1(s1)` of two curves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub s0: f64,
    pub s1: f64,
    pub point: PillowPoint,
    /// Crossing location on the lift of `c0`.
    pub lift: LiftPoint,
    pub lift_offset: DeckElement,
    /// Unsigned angle between the tangent lines, in `(0, π/2]`.
    pub angle: f64,
}

/// Segment crossing `a + t(b-a) = c + u(d-c)` with `t, u ∈ [0,1)`.
///
/// Returns `(t, u, angle)`; near-parallel overlapping segments are an error.
/// `Ok(Some((t, u, angle)))` for a transverse crossing, `Err((t, u))` for a
/// crossing below the angle tolerance.
pub(crate) type SegmentHit = Result<Option<(f64, f64, f64)>, (f64, f64)>;

/// Segment `i` of the first curve at `t`, segment `j` of the second at `u`
/// under a deck element, and the crossing angle.
type RawCrossing = (usize, f64, usize, f64, DeckElement, f64);

pub(crate) fn segment_crossing(
    a: LiftPoint,
    b: LiftPoint,
    c: LiftPoint,
    d: LiftPoint,
    angle_tol: f64,
) -> SegmentHit {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    let qp = c - a;
    let (lr, ls) = (r.norm(), s.norm());
    let sin = denom / (lr * ls);
    if sin.abs() < angle_tol {
        // Parallel: a crossing is only possible if the segments overlap.
        let off = qp.cross(r) / lr;
        if off.abs() > 1e-9 {
            return Ok(None);
        }
        let t0 = qp.dot(r) / (lr * lr);
        let t1 = (d - a).dot(r) / (lr * lr);
        if t0.max(t1) < 0.0 || t0.min(t1) >= 1.0 {
            return Ok(None);
        }
        let (lo, hi) = (t0.min(t1).max(0.0), t0.max(t1).min(1.0));
        // Collinear arcs through a shared corner touch only off P*.
        if hi - lo < 1e-12 && a.lerp(b, lo).lattice_distance() <= LATTICE_TOL {
            return Ok(None);
        }
        return Err((lo, 0.0));
    }
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    if !(0.0..1.0).contains(&t) || !(0.0..1.0).contains(&u) {
        return Ok(None);
    }
    Ok(Some((t, u, sin.abs().asin())))
}

/// Uniform grid over one period of a curve's segments.
struct SegmentGrid {
    origin: (f64, f64),
    cell: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl SegmentGrid {
    fn new(segs: &[(LiftPoint, LiftPoint)]) -> SegmentGrid {
        let pts: Vec<LiftPoint> = segs.iter().flat_map(|&(a, b)| [a, b]).collect();
        let bb = bbox(&pts);
        let mean = segs.iter().map(|(a, b)| a.dist(*b)).sum::<f64>() / segs.len().max(1) as f64;
        let cell = (4.0 * mean).max(1e-3);
        let mut grid = SegmentGrid { origin: (bb[0], bb[1]), cell, cells: HashMap::new() };
        for (i, &(a, b)) in segs.iter().enumerate() {
            for key in grid.keys(&bbox(&[a, b])) {
                grid.cells.entry(key).or_default().push(i);
            }
        }
        grid
    }

    fn keys(&self, bb: &[f64; 4]) -> impl Iterator<Item = (i64, i64)> {
        let f = |x: f64, o: f64| ((x - o) / self.cell).floor() as i64;
        let (i0, i1) = (f(bb[0], self.origin.0), f(bb[2], self.origin.0));
        let (j0, j1) = (f(bb[1], self.origin.1), f(bb[3], self.origin.1));
        (i0..=i1).flat_map(move |i| (j0..=j1).map(move |j| (i, j)))
    }

    fn candidates(&self, bb: &[f64; 4]) -> Vec<usize> {
        let mut out: Vec<usize> = self.keys(bb).filter_map(|k| self.cells.get(&k)).flatten().copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Deck elements `h` with `h·bb1` meeting `bb0` (both padded by `pad`).
fn overlapping_elements(bb0: &[f64; 4], bb1: &[f64; 4], pad: f64) -> Vec<DeckElement> {
    let mut out = Vec::new();
    for sigma in [1i8, -1] {
        let (g_lo, g_hi) = if sigma > 0 { (bb1[0], bb1[2]) } else { (-bb1[2], -bb1[0]) };
        let (t_lo, t_hi) = if sigma > 0 { (bb1[1], bb1[3]) } else { (-bb1[3], -bb1[1]) };
        let m0 = ((bb0[0] - pad - g_hi) / TAU).ceil() as i64;
        let m1 = ((bb0[2] + pad - g_lo) / TAU).floor() as i64;
        let n0 = ((bb0[1] - pad - t_hi) / TAU).ceil() as i64;
        let n1 = ((bb0[3] + pad - t_lo) / TAU).floor() as i64;
        for m in m0..=m1 {
            for n in n0..=n1 {
                out.push(DeckElement::new(m, n, sigma));
            }
        }
    }
    out
}

fn period_segments(c: &LiftedCurve) -> Vec<(LiftPoint, LiftPoint)> {
    (0..c.segment_count() as i64).map(|i| c.segment(i)).collect()
}

/// Raw crossings `(i, t, j, u, h, angle)` of segment `i` of `c0` with `h`
/// applied to segment `j` of `c1`, over all deck translates.
fn raw_crossings(
    c0: &LiftedCurve,
    c1: &LiftedCurve,
    angle_tol: f64,
    skip: &(dyn Fn(usize, usize, DeckElement) -> bool + Sync),
) -> Result<Vec<RawCrossing>, CurveError> {
    let segs0 = period_segments(c0);
    let segs1 = period_segments(c1);
    let grid = SegmentGrid::new(&segs0);
    let bb0 = c0.bbox();
    let bb1 = c1.bbox();
    let elements = overlapping_elements(&bb0, &bb1, 1e-9);
    let results: Vec<Result<Vec<_>, CurveError>> = elements
        .par_iter()
        .map(|&h| {
            let mut found = Vec::new();
            for (j, &(c, d)) in segs1.iter().enumerate() {
                let (c, d) = (h.apply(c), h.apply(d));
                let sb = bbox(&[c, d]);
                if sb[2] < bb0[0] || sb[0] > bb0[2] || sb[3] < bb0[1] || sb[1] > bb0[3] {
                    continue;
                }
                for i in grid.candidates(&sb) {
                    if skip(i, j, h) {
                        continue;
                    }
                    let (a, b) = segs0[i];
                    match segment_crossing(a, b, c, d, angle_tol) {
                        Ok(Some((t, _, _))) if a.lerp(b, t).lattice_distance() <= LATTICE_TOL => {}
                        Ok(Some((t, u, angle))) => found.push((i, t, j, u, h, angle)),
                        Ok(None) => {}
                        Err((t, u)) => {
                            return Err(CurveError::NonTransverse {
                                s0: i as f64 + t,
                                s1: j as f64 + u,
                                at: a.lerp(b, t),
                            })
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect();
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    Ok(all)
}

fn make_point(c0: &LiftedCurve, s0: f64, s1: f64, h: DeckElement, angle: f64) -> IntersectionPoint {
    let lift = c0.point_at(s0);
    IntersectionPoint { s0, s1, point: canonicalize(lift).0, lift, lift_offset: h, angle }
}

/// All transverse crossings in P of `c0` with `c1`.
///
/// One period of `c0` is intersected with every deck translate of one period
/// of `c1` whose bounding box meets it, so each crossing of the images is
/// reported exactly once. Results are sorted by `(s0, s1)`.
pub fn intersections(c0: &LiftedCurve, c1: &LiftedCurve) -> Result<Vec<IntersectionPoint>, CurveError> {
    intersections_with(c0, c1, ANGLE_TOL)
}

pub fn intersections_with(
    c0: &LiftedCurve,
    c1: &LiftedCurve,
    angle_tol: f64,
) -> Result<Vec<IntersectionPoint>, CurveError> {
    let raw = raw_crossings(c0, c1, angle_tol, &|_, _, _| false)?;
    let mut out: Vec<IntersectionPoint> = raw
        .into_iter()
        .map(|(i, t, j, u, h, angle)| make_point(c0, i as f64 + t, j as f64 + u, h, angle))
        .collect();
    for p in &out {
        if p.angle < angle_tol {
            return Err(CurveError::NonTransverse { s0: p.s0, s1: p.s1, at: p.lift });
        }
    }
    out.sort_by(|a, b| a.s0.total_cmp(&b.s0).then(a.s1.total_cmp(&b.s1)));
    Ok(out)
}

/// Double points `c(s0) = h·c(s1)` with `s0 < s1` in one period.
pub fn self_intersections(c: &LiftedCurve) -> Result<Vec<IntersectionPoint>, CurveError> {
    let n = c.segment_count() as i64;
    // A segment never crosses itself or a neighbour on the same lift.
    let same_lift = |i: usize, j: usize, h: DeckElement| match c.kind {
        CurveKind::Circle => {
            (-2..=2).any(|k: i64| c.closure.pow(k) == h && (j as i64 + k * n - i as i64).abs() <= 1)
        }
        CurveKind::Arc => h.is_identity() && (j as i64 - i as i64).abs() <= 1,
    };
    let raw = raw_crossings(c, c, ANGLE_TOL, &same_lift)?;
    let mut out = Vec::new();
    for (i, t, j, u, h, angle) in raw {
        let (s0, s1) = (i as f64 + t, j as f64 + u);
        if s0 < s1 {
            out.push(make_point(c, s0, s1, h, angle));
        }
    }
    out.sort_by(|a, b| a.s0.total_cmp(&b.s0).then(a.s1.total_cmp(&b.s1)));
    Ok(out)
}
