//! The dual arc system and the ℤ/4 class z.
//!
//! Three arcs in P* joining corners: the open diagonal (lifts `θ - γ ∈ 2πℤ`),
//! the right edge (lifts `γ ∈ π + 2πℤ`) and the middle segment (lifts
//! `θ ∈ π + 2πℤ`). Each lift line is oriented by a fold-parity factor that
//! flips at every lattice point on the line, so the signed crossing count is
//! invariant under the deck group. The count evaluates to 1 on a loop around
//! any single corner and therefore represents z.

use std::collections::BTreeMap;

use super::deck::DeckElement;
use super::point::{LiftPoint, LATTICE_TOL};
use super::scalar::Coord;
use super::PillowError;
use crate::z4::Z4;

/// The three lift-line families of the arc system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcFamily {
    /// Lines `θ - γ ∈ 2πℤ`, direction `(1,1)·d`, parity keyed to γ.
    Diagonal,
    /// Lines `γ ∈ π + 2πℤ`, direction `e_θ·d`, parity keyed to θ.
    RightEdge,
    /// Lines `θ ∈ π + 2πℤ`, direction `e_γ·d`, parity keyed to γ.
    Middle,
}

impl ArcFamily {
    pub const ALL: [ArcFamily; 3] = [ArcFamily::Diagonal, ArcFamily::RightEdge, ArcFamily::Middle];

    /// Level function whose level sets are the lines.
    fn level<T: Coord>(self, p: (T, T)) -> T {
        match self {
            ArcFamily::Diagonal => p.1 - p.0,
            ArcFamily::RightEdge => p.0,
            ArcFamily::Middle => p.1,
        }
    }

    /// Lines sit at `offset + 2πk`.
    fn offset<T: Coord>(self) -> T {
        match self {
            ArcFamily::Diagonal => T::zero(),
            _ => T::half_turn(),
        }
    }

    /// Coordinate along the line that decides the fold parity.
    fn parity_coord<T: Coord>(self, p: (T, T)) -> T {
        match self {
            ArcFamily::RightEdge => p.1,
            _ => p.0,
        }
    }

    /// `cross(line direction, v) = orientation · Δlevel(v)`.
    fn orientation(self) -> i64 {
        match self {
            ArcFamily::RightEdge => -1,
            _ => 1,
        }
    }
}

fn period<T: Coord>() -> T {
    T::half_turn() + T::half_turn()
}

/// Index of the strip `[offset + 2πk, offset + 2π(k+1))` containing `x`.
fn strip<T: Coord>(x: T, offset: T) -> i64 {
    ((x - offset) / period::<T>()).floor_int()
}

/// Signed crossings of one segment with one family.
///
/// Endpoints exactly on a line count as lying above it, which makes the
/// count additive along polylines.
pub fn family_crossings<T: Coord>(
    family: ArcFamily,
    a: (T, T),
    b: (T, T),
    tol: f64,
) -> Result<i64, PillowError> {
    let off = family.offset::<T>();
    let fa = family.level(a);
    let fb = family.level(b);
    let (ka, kb) = (strip(fa, off), strip(fb, off));
    if ka == kb {
        let on_line = |f: T| {
            let k = strip(f, off);
            let c = off + T::from_int(k) * period::<T>();
            (f - c).within(tol) || (c + period::<T>() - f).within(tol)
        };
        if on_line(fa) && on_line(fb) && (fb - fa).within(tol) {
            return Err(PillowError::NonTransverseCrossing {
                at: LiftPoint::new(a.0.to_f64(), a.1.to_f64()),
            });
        }
        return Ok(0);
    }
    let dir = (fb - fa).signum_int();
    let (lo, hi) = if ka < kb { (ka + 1, kb) } else { (kb + 1, ka) };
    let mut total = 0;
    for k in lo..=hi {
        let c = off + T::from_int(k) * period::<T>();
        let lam = (c - fa) / (fb - fa);
        let key_a = family.parity_coord(a);
        let key = key_a + lam * (family.parity_coord(b) - key_a);
        let r = key - T::from_int(strip(key, T::zero())) * period::<T>();
        if r.within(tol) || (r - T::half_turn()).within(tol) || (period::<T>() - r).within(tol) {
            return Err(PillowError::LatticeHit {
                at: LiftPoint::new((a.0 + lam * (b.0 - a.0)).to_f64(), (a.1 + lam * (b.1 - a.1)).to_f64()),
            });
        }
        let d = if r < T::half_turn() { 1 } else { -1 };
        total += family.orientation() * d * dir;
    }
    Ok(total)
}

/// Signed crossing count of an open polyline with the arc system.
pub fn path_crossings<T: Coord>(path: &[(T, T)], tol: f64) -> Result<i64, PillowError> {
    let mut total = 0;
    for w in path.windows(2) {
        for fam in ArcFamily::ALL {
            total += family_crossings(fam, w[0], w[1], tol)?;
        }
    }
    Ok(total)
}

fn off_lines<T: Coord>(p: (T, T), tol: f64) -> bool {
    ArcFamily::ALL.iter().all(|&fam| {
        let off = fam.offset::<T>();
        let f = fam.level(p);
        let c = off + T::from_int(strip(f, off)) * period::<T>();
        !(f - c).within(tol) && !(c + period::<T>() - f).within(tol)
    })
}

/// z of a closed loop in P* given as a lifted path from `x̃` to `g·x̃`.
///
/// The loop is re-based at a point off all arc lines so the result does not
/// depend on where the path happens to start.
pub fn z_of_loop_generic<T: Coord>(
    path: &[(T, T)],
    apply: impl Fn((T, T)) -> (T, T),
    tol: f64,
) -> Result<Z4, PillowError> {
    if path.len() < 2 {
        return Ok(Z4::ZERO);
    }
    let two = T::from_int(2);
    let base = (0..path.len() - 1).find_map(|i| {
        let mid = ((path[i].0 + path[i + 1].0) / two, (path[i].1 + path[i + 1].1) / two);
        off_lines(mid, tol).then_some((i, mid))
    });
    let Some((i, mid)) = base else {
        return Err(PillowError::NonTransverseCrossing {
            at: LiftPoint::new(path[0].0.to_f64(), path[0].1.to_f64()),
        });
    };
    let mut rebased = Vec::with_capacity(path.len() + 2);
    rebased.push(mid);
    rebased.extend_from_slice(&path[i + 1..]);
    rebased.extend(path[1..=i].iter().map(|&p| apply(p)));
    rebased.push(apply(mid));
    Ok(Z4::new(path_crossings(&rebased, tol)?))
}

/// z of a loop lifted as `points[0] → … → points[last] = closure·points[0]`.
pub fn z_of_loop(points: &[LiftPoint], closure: DeckElement) -> Result<Z4, PillowError> {
    z_of_loop_with(points, closure, LATTICE_TOL)
}

pub fn z_of_loop_with(points: &[LiftPoint], closure: DeckElement, tol: f64) -> Result<Z4, PillowError> {
    check_closure(points, closure)?;
    let path: Vec<(f64, f64)> = points.iter().map(|p| (p.gamma, p.theta)).collect();
    z_of_loop_generic(
        &path,
        |(g, t)| {
            let q = closure.apply(LiftPoint::new(g, t));
            (q.gamma, q.theta)
        },
        tol,
    )
}

fn check_closure(points: &[LiftPoint], closure: DeckElement) -> Result<(), PillowError> {
    let (Some(&first), Some(&last)) = (points.first(), points.last()) else {
        return Ok(());
    };
    let gap = closure.apply(first).dist(last);
    if gap > 1e-6 * (1.0 + last.norm()) {
        return Err(PillowError::OpenPath { gap });
    }
    Ok(())
}

/// Planar winding number of a closed polyline around `x`.
///
/// Assumes `x` is off the polyline.
pub fn winding_number(points: &[LiftPoint], x: LiftPoint) -> i64 {
    let mut w = 0;
    for s in points.windows(2) {
        let (a, b) = (s[0] - x, s[1] - x);
        if a.theta <= 0.0 {
            if b.theta > 0.0 && a.cross(b) > 0.0 {
                w += 1;
            }
        } else if b.theta <= 0.0 && a.cross(b) < 0.0 {
            w -= 1;
        }
    }
    w
}

/// Winding numbers around the lattice points `(jπ, kπ)` inside the loop's
/// bounding box, keyed by `(j, k)`; absent keys have winding zero.
pub fn winding_numbers(
    points: &[LiftPoint],
    closure: DeckElement,
) -> Result<BTreeMap<(i64, i64), i64>, PillowError> {
    if !closure.is_identity() {
        return Err(PillowError::NonClosedLoop { closure });
    }
    check_closure(points, closure)?;
    let mut out = BTreeMap::new();
    if points.len() < 3 {
        return Ok(out);
    }
    let pi = std::f64::consts::PI;
    let (mut g0, mut g1, mut t0, mut t1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in points {
        g0 = g0.min(p.gamma);
        g1 = g1.max(p.gamma);
        t0 = t0.min(p.theta);
        t1 = t1.max(p.theta);
    }
    for j in (g0 / pi).ceil() as i64..=(g1 / pi).floor() as i64 {
        for k in (t0 / pi).ceil() as i64..=(t1 / pi).floor() as i64 {
            let w = winding_number(points, LiftPoint::new(j as f64 * pi, k as f64 * pi));
            if w != 0 {
                out.insert((j, k), w);
            }
        }
    }
    Ok(out)
}
