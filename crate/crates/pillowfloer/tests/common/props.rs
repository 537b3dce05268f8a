//! Property bodies shared by the unit suites and the acceptance runner.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use pillowfloer::curves::{figure_eight, intersections, CurveError, LiftedCurve, DEFAULT_SAMPLES};
use pillowfloer::floer::{build_complex, ComplexOptions, FloerError};
use pillowfloer::maslov::{
    connecting_loop_with, mas_polygon, relative_grading, relative_grading_along, triple_index, LineSlope, MaslovError,
};
use pillowfloer::pillowcase::{DeckElement, LiftPoint, PerturbationFunction};
use pillowfloer::Z4;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type PropResult = Result<(), TestCaseError>;

pub fn pt(g: f64, t: f64) -> LiftPoint {
    LiftPoint::new(g, t)
}

pub fn l0(eps: f64, amp: f64) -> LiftedCurve {
    figure_eight(eps, &PerturbationFunction::sine(amp), DEFAULT_SAMPLES).unwrap()
}

/// Vertical circle of degree `d` near `γ = π/2`, with a steep sideways bump
/// centred at height `theta0`.
pub fn bumped(d: i64, n: usize, amp: f64, theta0: f64) -> LiftedCurve {
    let verts = (0..=n)
        .map(|i| {
            let t = TAU * d as f64 * i as f64 / n as f64 + 0.2;
            let b = amp * (-((t - theta0) / 0.25).powi(2)).exp();
            LiftPoint::new(FRAC_PI_2 + 0.1 * ((t - 0.2) / d as f64).cos() + b, t)
        })
        .collect();
    LiftedCurve::circle("b", verts, DeckElement::translation(0, d)).unwrap()
}

pub fn line() -> impl Strategy<Value = LineSlope> {
    (0.0..PI).prop_map(LineSlope::from_angle)
}

pub fn clockwise(points: &[LiftPoint]) -> bool {
    let n = points.len();
    (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum::<f64>() < 0.0
}

pub fn straight_sides(points: &[LiftPoint]) -> Vec<Vec<LiftPoint>> {
    let n = points.len();
    (0..n).map(|i| vec![points[i], points[(i + 1) % n]]).collect()
}

/// Star-shaped polygon listed clockwise, with angle gaps bounded below.
pub fn star_polygon(convex: bool) -> impl Strategy<Value = Vec<LiftPoint>> {
    (3usize..=7).prop_flat_map(move |n| {
        (prop::collection::vec(0.2f64..1.0, n), prop::collection::vec(0.3f64..1.0, n), 0.0..PI).prop_map(
            move |(gaps, radii, phase)| {
                let total: f64 = gaps.iter().sum();
                let mut angle = phase;
                let mut pts = Vec::with_capacity(n);
                for (gap, r) in gaps.iter().zip(&radii) {
                    let r = if convex { 1.0 } else { *r };
                    pts.push(pt(3.0 + r * angle.cos(), 2.0 + r * angle.sin()));
                    angle -= 2.0 * PI * gap / total;
                }
                pts
            },
        )
    })
}

pub fn reflex_corners(points: &[LiftPoint]) -> i64 {
    let n = points.len();
    (0..n)
        .filter(|&i| {
            let e_in = points[i] - points[(i + n - 1) % n];
            let e_out = points[(i + 1) % n] - points[i];
            e_in.cross(e_out) > 0.0
        })
        .count() as i64
}

pub fn random_polyline(from: LiftPoint, to: LiftPoint, bumps: &[f64]) -> Vec<LiftPoint> {
    let d = to - from;
    let normal = pt(-d.theta, d.gamma);
    let k = bumps.len() + 1;
    let mut pts = vec![from];
    for (i, b) in bumps.iter().enumerate() {
        let t = (i + 1) as f64 / k as f64;
        pts.push(from + d * t + normal * *b);
    }
    pts.push(to);
    pts
}

pub fn triple_index_symmetry((a, b, l): (LineSlope, LineSlope, LineSlope)) -> PropResult {
    prop_assume!((a.angle() - b.angle()).abs() > 1e-6);
    let s = triple_index(a, b, l).unwrap() + triple_index(b, a, l).unwrap();
    prop_assert_eq!(s, 1);
    Ok(())
}

pub fn convex_polygon_index((pts, l): (Vec<LiftPoint>, LineSlope)) -> PropResult {
    prop_assert!(clockwise(&pts));
    let m = mas_polygon(&straight_sides(&pts), l);
    prop_assume!(!matches!(m, Err(MaslovError::EqualLines { .. })));
    prop_assert_eq!(m.unwrap(), 3 - pts.len() as i64);
    Ok(())
}

pub fn embedded_polygon_index((pts, l): (Vec<LiftPoint>, LineSlope)) -> PropResult {
    prop_assume!(clockwise(&pts));
    let m = mas_polygon(&straight_sides(&pts), l);
    prop_assume!(!matches!(m, Err(MaslovError::EqualLines { .. })));
    let n = pts.len() as i64;
    prop_assert_eq!(m.unwrap(), 3 - n + reflex_corners(&pts));
    Ok(())
}

pub type ReversalArgs = (Vec<(f64, f64)>, Vec<Vec<f64>>, LineSlope, usize);

pub fn reversal_args() -> impl Strategy<Value = ReversalArgs> {
    (
        prop::collection::vec((0.0f64..4.0, 0.0f64..4.0), 2..6),
        prop::collection::vec(prop::collection::vec(-0.15f64..0.15, 0..4), 6),
        line(),
        0usize..6,
    )
}

pub fn reversal_and_cyclic_identities((corners, bumps, l, shift): ReversalArgs) -> PropResult {
    let pts: Vec<LiftPoint> = corners.iter().map(|&(g, t)| pt(g, t)).collect();
    let n = pts.len();
    prop_assume!((0..n).all(|i| pts[i].dist(pts[(i + 1) % n]) > 0.3));
    let sides: Vec<Vec<LiftPoint>> = (0..n).map(|i| random_polyline(pts[i], pts[(i + 1) % n], &bumps[i])).collect();
    let m = mas_polygon(&sides, l);
    prop_assume!(m.is_ok());
    let m = m.unwrap();
    let mut rotated = sides.clone();
    rotated.rotate_left(shift % n);
    prop_assert_eq!(mas_polygon(&rotated, l).unwrap(), m);
    let reversed: Vec<Vec<LiftPoint>> = sides.iter().rev().map(|s| s.iter().rev().copied().collect()).collect();
    prop_assert_eq!(mas_polygon(&reversed, l).unwrap(), 2 - n as i64 - m);
    // Independent of the line field for loops that close in the plane.
    let other = mas_polygon(&sides, LineSlope::from_angle(l.angle() + 1.0));
    if let Ok(o) = other {
        prop_assert_eq!(o, m);
    }
    Ok(())
}

pub type SpliceArgs = (Vec<(f64, f64)>, (f64, f64), (f64, f64), (f64, f64, f64, f64), usize, LineSlope);

pub fn splice_args() -> impl Strategy<Value = SpliceArgs> {
    (
        prop::collection::vec((0.0f64..4.0, 0.0f64..4.0), 4..8),
        (1.0f64..3.0, 1.0f64..3.0),
        (0.0f64..PI, 0.0f64..PI),
        (0.2f64..1.0, 0.2f64..1.0, 0.2f64..1.0, 0.2f64..1.0),
        0usize..8,
        line(),
    )
}

pub fn splicing_is_additive((corners, q, dirs, lens, k_pick, l): SpliceArgs) -> PropResult {
    let mut pts: Vec<LiftPoint> = corners.iter().map(|&(g, t)| pt(g, t)).collect();
    let n = pts.len();
    let k = 2 + k_pick % (n - 3);
    let q = pt(q.0, q.1);
    let u0 = pt(dirs.0.cos(), dirs.0.sin());
    let uk = pt(dirs.1.cos(), dirs.1.sin());
    // Sides 0 and k are straight segments crossing at q.
    pts[0] = q - u0 * lens.0;
    pts[1] = q + u0 * lens.1;
    pts[k] = q - uk * lens.2;
    pts[k + 1] = q + uk * lens.3;
    let sides = straight_sides(&pts);
    let whole = mas_polygon(&sides, l);
    let mut first = vec![vec![q, pts[1]]];
    first.extend(sides[1..k].iter().cloned());
    first.push(vec![pts[k], q]);
    let mut second = vec![vec![q, pts[(k + 1) % n]]];
    second.extend(sides[k + 1..].iter().cloned());
    second.push(vec![pts[0], q]);
    let (m1, m2) = (mas_polygon(&first, l), mas_polygon(&second, l));
    prop_assume!(whole.is_ok() && m1.is_ok() && m2.is_ok());
    prop_assert_eq!(whole.unwrap(), m1.unwrap() + m2.unwrap());
    Ok(())
}

pub type TripleArgs = (f64, f64, usize, usize, usize, i64, i64);

pub fn generator_triples() -> impl Strategy<Value = TripleArgs> {
    (2.0f64..3.0, 0.6f64..0.9, 0usize..64, 0usize..64, 0usize..64, -1i64..=1, -1i64..=1)
}

pub fn grading_is_additive_and_path_independent((theta0, amp, a, b, c, k0, k1): TripleArgs) -> PropResult {
    let l1 = bumped(2, 400, amp, theta0);
    let l = l0(0.1, 0.0);
    let gens = intersections(&l, &l1).unwrap();
    let n = gens.len();
    let (x, y, z) = (&gens[a % n], &gens[b % n], &gens[c % n]);
    let gxy = relative_grading(&l, &l1, x, y).unwrap();
    let gyz = relative_grading(&l, &l1, y, z).unwrap();
    let gxz = relative_grading(&l, &l1, x, z).unwrap();
    prop_assert_eq!(gxy + gyz, gxz);
    prop_assert_eq!(relative_grading(&l, &l1, x, x).unwrap(), Z4::ZERO);
    prop_assert_eq!(relative_grading(&l, &l1, y, x).unwrap(), -gxy);
    // Any wrapping of the connecting paths gives the same answer.
    let lp = connecting_loop_with(&l, &l1, x, y, k0, k1);
    prop_assert_eq!(relative_grading_along(&l, &l1, x, y, &lp).unwrap(), gxy);
    Ok(())
}

pub type ComplexArgs = (i64, f64, f64, f64, f64);

/// Bumped vertical circles of even degree against perturbed figure eights.
pub fn complex_args() -> impl Strategy<Value = ComplexArgs> {
    ((1i64..=2).prop_map(|k| 2 * k), 0.0f64..1.0, 1.2f64..5.2, 0.04f64..0.2, -0.05f64..0.05)
}

/// `∂` lowers the grading by one, squares to zero, and every bigon joins
/// generators one grading apart.
pub fn differential_properties((d, amp, theta0, eps, g_amp): ComplexArgs) -> PropResult {
    let l1 = bumped(d, 300 * d as usize, amp, theta0);
    let l = l0(eps, g_amp);
    let cx = match build_complex(&l, std::slice::from_ref(&l1), &ComplexOptions::default()) {
        Ok(cx) => cx,
        Err(FloerError::Curve(CurveError::NonTransverse { .. })) | Err(FloerError::NotAdmissible { .. }) => {
            return Err(TestCaseError::reject("degenerate pair"))
        }
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    let comp = &cx.components[0];
    for &(p, q) in &comp.differential {
        let (gp, gq) = (cx.grading.grade(0, p).unwrap(), cx.grading.grade(0, q).unwrap());
        prop_assert_eq!(gp - gq, Z4::ONE);
    }
    for b in &comp.bigons {
        let gr = relative_grading(&l, &l1, &comp.generators[b.from], &comp.generators[b.to]).unwrap();
        prop_assert_eq!(gr, Z4::ONE);
    }
    let m = comp.matrix();
    prop_assert!(m.mul(&m).is_zero());
    Ok(())
}
