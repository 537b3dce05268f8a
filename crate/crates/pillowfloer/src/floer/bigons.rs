use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FloerError;
use crate::curves::{bbox, segment_crossing, IntersectionPoint, LiftedCurve};
use crate::maslov::{connecting_loop_with, loop_maslov_terms};
use crate::pillowcase::{winding_number, winding_numbers, DeckElement, LiftPoint, PillowError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InteriorClass {
    /// The boundary loop is simple and bounds an embedded disk.
    EmbeddedDisk,
    /// The boundary loop crosses itself; every complementary region has
    /// nonnegative winding.
    ImmersedGlued,
}

/// A Maslov index 1 immersed 2-gon from `from` to `to`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigonCertificate {
    pub from: usize,
    pub to: usize,
    pub from_point: IntersectionPoint,
    pub to_point: IntersectionPoint,
    /// Parameter range on L0 from `from` to `to`.
    pub alpha0: (f64, f64),
    /// Parameter range on L1 from `to` back to `from`.
    pub alpha1: (f64, f64),
    /// Deck element placing the L1 lift.
    pub deck: DeckElement,
    /// Counterclockwise boundary, closed in the plane.
    pub boundary_loop: Vec<LiftPoint>,
    pub interior_class: InteriorClass,
    pub area: f64,
}

/// Bounds of the bigon search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchLimits {
    /// Largest number of extra periods either boundary path may wrap.
    pub k_max: i64,
    /// Largest distance, in units of 2π, of a bigon boundary from its
    /// starting corner.
    pub window: f64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { k_max: 2, window: 8.0 }
    }
}

pub(crate) fn signed_area(points: &[LiftPoint]) -> f64 {
    points.windows(2).map(|w| w[0].cross(w[1])).sum::<f64>() / 2.0
}

/// Self-crossings `(i, t, j, u)` of a closed polyline, `i < j`, skipping
/// adjacent segments.
pub(crate) fn loop_crossings(points: &[LiftPoint]) -> Vec<(usize, f64, usize, f64)> {
    let n = points.len() - 1;
    let segs: Vec<(LiftPoint, LiftPoint)> = (0..n).map(|i| (points[i], points[i + 1])).collect();
    let bb = bbox(points);
    let mean = segs.iter().map(|(a, b)| a.dist(*b)).sum::<f64>() / n.max(1) as f64;
    let cell = (4.0 * mean).max(1e-6);
    let key = |x: f64, y: f64| (((x - bb[0]) / cell).floor() as i64, ((y - bb[1]) / cell).floor() as i64);
    let mut grid: std::collections::HashMap<(i64, i64), Vec<usize>> = std::collections::HashMap::new();
    for (i, &(a, b)) in segs.iter().enumerate() {
        let (lo, hi) = (key(a.gamma.min(b.gamma), a.theta.min(b.theta)), key(a.gamma.max(b.gamma), a.theta.max(b.theta)));
        for gx in lo.0..=hi.0 {
            for gy in lo.1..=hi.1 {
                grid.entry((gx, gy)).or_default().push(i);
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for cell in grid.values() {
        for (x, &i) in cell.iter().enumerate() {
            for &j in &cell[x + 1..] {
                let (i, j) = (i.min(j), i.max(j));
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                pairs.push((i, j));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let mut out = Vec::new();
    for (i, j) in pairs {
        let (a, b) = segs[i];
        let (c, d) = segs[j];
        if a.dist(b) < 1e-13 || c.dist(d) < 1e-13 {
            continue;
        }
        match segment_crossing(a, b, c, d, 1e-12) {
            Ok(Some((t, u, _))) => out.push((i, t, j, u)),
            Ok(None) => {}
            Err((t, u)) => out.push((i, t, j, u)),
        }
    }
    out
}

/// Smallest winding number over the complementary regions of a closed
/// polyline, sampled just off both sides of every edge piece between
/// crossings.
pub(crate) fn min_region_winding(points: &[LiftPoint], crossings: &[(usize, f64, usize, f64)]) -> i64 {
    let n = points.len() - 1;
    let mut cuts: Vec<Vec<f64>> = vec![vec![0.0, 1.0]; n];
    for &(i, t, j, u) in crossings {
        cuts[i].push(t);
        cuts[j].push(u);
    }
    let mut min = i64::MAX;
    for (i, c) in cuts.iter_mut().enumerate() {
        c.sort_by(f64::total_cmp);
        let (a, b) = (points[i], points[i + 1]);
        let d = b - a;
        let len = d.norm();
        if len < 1e-13 {
            continue;
        }
        let normal = LiftPoint::new(-d.theta, d.gamma) * (1.0 / len);
        for w in c.windows(2) {
            let piece = (w[1] - w[0]) * len;
            if piece < 1e-12 {
                continue;
            }
            let m = a.lerp(b, (w[0] + w[1]) / 2.0);
            let eta = (1e-4 * piece).max(1e-11);
            for side in [1.0, -1.0] {
                min = min.min(winding_number(points, m + normal * (side * eta)));
            }
        }
    }
    min
}

fn classify(points: &[LiftPoint]) -> Result<Option<(InteriorClass, f64)>, PillowError> {
    let area = signed_area(points);
    if area <= 0.0 {
        return Ok(None);
    }
    if !winding_numbers(points, DeckElement::IDENTITY)?.is_empty() {
        return Ok(None);
    }
    let crossings = loop_crossings(points);
    if crossings.is_empty() {
        return Ok(Some((InteriorClass::EmbeddedDisk, area)));
    }
    if min_region_winding(points, &crossings) >= 0 {
        return Ok(Some((InteriorClass::ImmersedGlued, area)));
    }
    Ok(None)
}

fn wraps(c: &LiftedCurve, k_max: i64) -> std::ops::RangeInclusive<i64> {
    if c.is_circle() {
        -k_max..=k_max
    } else {
        0..=0
    }
}

fn bigons_between(
    l0: &LiftedCurve,
    l1: &LiftedCurve,
    generators: &[IntersectionPoint],
    from: usize,
    to: usize,
    limits: SearchLimits,
) -> Result<Vec<BigonCertificate>, FloerError> {
    let (p, q) = (&generators[from], &generators[to]);
    let mut out = Vec::new();
    for k0 in wraps(l0, limits.k_max) {
        for k1 in wraps(l1, limits.k_max) {
            let closure = l0
                .closure
                .pow(k0)
                .compose(q.lift_offset)
                .compose(l1.closure.pow(k1))
                .compose(p.lift_offset.inverse());
            if !closure.is_identity() {
                continue;
            }
            let lp = connecting_loop_with(l0, l1, p, q, k0, k1);
            if loop_maslov_terms(l0, l1, p, q, &lp)? != 1 {
                continue;
            }
            let Some((interior_class, area)) = classify(&lp.points)? else {
                continue;
            };
            let bb = bbox(&lp.points);
            let reach = [bb[0] - p.lift.gamma, bb[1] - p.lift.theta, bb[2] - p.lift.gamma, bb[3] - p.lift.theta]
                .iter()
                .fold(0.0f64, |m, x| m.max(x.abs()));
            if reach > limits.window * TAU {
                return Err(FloerError::WindowExhausted { from, to, window: limits.window });
            }
            out.push(BigonCertificate {
                from,
                to,
                from_point: p.clone(),
                to_point: q.clone(),
                alpha0: lp.alpha0,
                alpha1: lp.alpha1,
                deck: lp.l1_deck,
                boundary_loop: lp.points,
                interior_class,
                area,
            });
        }
    }
    Ok(out)
}

/// All bigons between generators of `C(L0, L1)` within the search limits,
/// ordered by `(from, to)`.
pub fn find_bigons(
    l0: &LiftedCurve,
    l1: &LiftedCurve,
    generators: &[IntersectionPoint],
    limits: SearchLimits,
) -> Result<Vec<BigonCertificate>, FloerError> {
    let n = generators.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let found: Vec<Result<Vec<BigonCertificate>, FloerError>> =
        pairs.par_iter().map(|&(i, j)| bigons_between(l0, l1, generators, i, j, limits)).collect();
    let mut out = Vec::new();
    for f in found {
        out.extend(f?);
    }
    Ok(out)
}
