use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use pillowfloer::curves::LiftedCurve;
use pillowfloer::maslov::{
    anchor_absolute, mas_ngon, mas_polygon, path_maslov, polyline_maslov, triple_index, AnchorSource, ComponentGrading,
    CurvePath, GradingAssignment, LineSlope, MaslovError,
};
use pillowfloer::pillowcase::{DeckElement, LiftPoint};
use pillowfloer::Z4;
use proptest::prelude::*;

mod common;
use common::props::{self, line, star_polygon};

use common::props::pt;

/// A horizontally periodic circle whose profile is `y = x²` on `[-1, 1]`,
/// continued by even C¹ pieces. Returns the curve and the vertex indices of
/// `x = -1, 0, 1`.
fn parabola_circle() -> (LiftedCurve, [f64; 3]) {
    let per_unit = 40;
    let outer = 80;
    let mut xs = Vec::new();
    for i in 0..outer {
        xs.push(-PI + (PI - 1.0) * i as f64 / outer as f64);
    }
    let i_minus = xs.len();
    for i in 0..2 * per_unit {
        xs.push(-1.0 + i as f64 / per_unit as f64);
    }
    let i_one = xs.len();
    for i in 0..=outer {
        xs.push(1.0 + (PI - 1.0) * i as f64 / outer as f64);
    }
    let y = |x: f64| {
        let a = x.abs();
        if a <= 1.0 {
            x * x
        } else {
            let u = a - 1.0;
            1.0 + 2.0 * u - u * u / (PI - 1.0)
        }
    };
    let verts: Vec<LiftPoint> = xs.iter().map(|&x| pt(x + 0.5, y(x) + 0.3)).collect();
    let c = LiftedCurve::circle("parabola", verts, DeckElement::translation(1, 0)).unwrap();
    let i_zero = i_minus + per_unit;
    (c, [i_minus as f64, i_zero as f64, i_one as f64])
}

#[test]
fn parabola_maslov_indices() {
    let (c, [a, o, b]) = parabola_circle();
    assert_eq!(path_maslov(&c, a, b, LineSlope::HORIZONTAL).unwrap(), 1);
    assert_eq!(path_maslov(&c, o, b, LineSlope::HORIZONTAL).unwrap(), 1);
    assert_eq!(path_maslov(&c, a, o, LineSlope::HORIZONTAL).unwrap(), 0);
}

#[test]
fn parabola_path_reversal_negates() {
    let (c, [a, o, b]) = parabola_circle();
    for (s, e) in [(a, b), (o, b), (a, o), (a + 0.5, b - 0.25)] {
        for l in [LineSlope::HORIZONTAL, LineSlope::SLOPE_ONE, LineSlope::from_angle(2.0)] {
            let fwd = path_maslov(&c, s, e, l).unwrap();
            let back = path_maslov(&c, e, s, l).unwrap();
            assert_eq!(fwd, -back, "path {s}..{e} against {l:?}");
        }
    }
}

#[test]
fn straight_segment_has_no_tangency() {
    let pts = [pt(0.1, 0.2), pt(1.1, 0.7), pt(2.1, 1.2)];
    assert_eq!(polyline_maslov(&pts, LineSlope::SLOPE_ONE).unwrap(), 0);
}

#[test]
fn sharp_turn_is_rejected() {
    let pts = [pt(0.0, 0.0), pt(1.0, 0.0), pt(0.5, 0.1)];
    assert!(matches!(polyline_maslov(&pts, LineSlope::SLOPE_ONE), Err(MaslovError::NonGenericVertex { .. })));
}

#[test]
fn triple_index_examples() {
    let (h, v, one) = (LineSlope::HORIZONTAL, LineSlope::VERTICAL, LineSlope::SLOPE_ONE);
    assert_eq!(triple_index(h, v, one).unwrap(), 0);
    assert_eq!(triple_index(v, h, one).unwrap(), 1);
    assert!(matches!(triple_index(one, one, h), Err(MaslovError::EqualLines { .. })));
}

#[test]
fn triple_index_when_reference_matches_an_argument() {
    // The reference is nudged counterclockwise, so a clockwise sweep ending
    // on ℓ passes it and one starting on ℓ does not.
    let (h, one) = (LineSlope::HORIZONTAL, LineSlope::SLOPE_ONE);
    assert_eq!(triple_index(LineSlope::VERTICAL, one, one).unwrap(), 1);
    assert_eq!(triple_index(one, h, one).unwrap(), 0);
}

#[derive(serde::Deserialize)]
struct PolygonFixture {
    sides: Vec<Vec<[f64; 2]>>,
}

fn fixture_sides(text: &str) -> Vec<Vec<LiftPoint>> {
    let f: PolygonFixture = serde_json::from_str(text).unwrap();
    f.sides.into_iter().map(|s| s.into_iter().map(|[g, t]| pt(g, t)).collect()).collect()
}

#[test]
fn five_gon_fixture_has_index_minus_one() {
    let sides = fixture_sides(include_str!("../../../fixtures/five_gon.json"));
    assert_eq!(sides.len(), 5);
    for l in [LineSlope::SLOPE_ONE, LineSlope::HORIZONTAL, LineSlope::from_angle(1.0)] {
        assert_eq!(mas_polygon(&sides, l).unwrap(), -1);
    }
}

/// Lens between `y = 1 - x²` and `y = x² - 1`, listed clockwise from the
/// left corner.
fn lens() -> Vec<Vec<LiftPoint>> {
    let n = 60;
    let upper: Vec<LiftPoint> =
        (0..=n).map(|i| -1.0 + 2.0 * i as f64 / n as f64).map(|x| pt(x + 2.0, 1.0 - x * x + 1.5)).collect();
    let lower: Vec<LiftPoint> =
        (0..=n).map(|i| 1.0 - 2.0 * i as f64 / n as f64).map(|x| pt(x + 2.0, x * x - 1.0 + 1.5)).collect();
    vec![upper, lower]
}

#[test]
fn model_bigon_has_index_one() {
    let mut sides = lens();
    assert_eq!(mas_polygon(&sides, LineSlope::SLOPE_ONE).unwrap(), 1);
    sides.rotate_left(1);
    assert_eq!(mas_polygon(&sides, LineSlope::SLOPE_ONE).unwrap(), 1);
}

#[test]
fn model_bigon_through_curve_paths() {
    // `b` runs above `a` between the corners (0,0) and (π,π).
    let a = LiftedCurve::arc("a", vec![pt(0.0, 0.0), pt(PI / 2.0, 1.0), pt(PI, PI)]).unwrap();
    let b = LiftedCurve::arc("b", vec![pt(0.0, 0.0), pt(1.0, PI / 2.0), pt(PI, PI)]).unwrap();
    let clockwise = [CurvePath { curve: &b, from: 0.0, to: 2.0 }, CurvePath { curve: &a, from: 2.0, to: 0.0 }];
    assert_eq!(mas_ngon(&clockwise, LineSlope::SLOPE_ONE).unwrap(), 1);
    let reversed = [CurvePath { curve: &a, from: 0.0, to: 2.0 }, CurvePath { curve: &b, from: 2.0, to: 0.0 }];
    assert_eq!(mas_ngon(&reversed, LineSlope::SLOPE_ONE).unwrap(), -1);
}

#[test]
fn chain_mismatch_is_reported() {
    let sides = vec![vec![pt(0.1, 0.1), pt(1.0, 0.3)], vec![pt(1.0, 0.35), pt(0.1, 0.1)]];
    assert!(matches!(mas_polygon(&sides, LineSlope::SLOPE_ONE), Err(MaslovError::ChainMismatch { .. })));
}

#[test]
fn anchoring_shifts_one_component() {
    let g = GradingAssignment {
        components: vec![
            ComponentGrading { grades: vec![Z4::new(0), Z4::new(1), Z4::new(3)], anchor: None },
            ComponentGrading { grades: vec![Z4::new(2)], anchor: None },
        ],
    };
    let a = anchor_absolute(&g, 0, 1, Z4::new(2), AnchorSource::User).unwrap();
    assert_eq!(a.components[0].grades, vec![Z4::new(1), Z4::new(2), Z4::new(0)]);
    assert_eq!(a.components[1], g.components[1]);
    let b = anchor_absolute(&a, 0, 1, Z4::new(2), AnchorSource::User).unwrap();
    assert_eq!(a, b);
    assert!(matches!(
        anchor_absolute(&g, 1, 4, Z4::ONE, AnchorSource::User),
        Err(MaslovError::UnknownGenerator { .. })
    ));
    assert!(matches!(g.relative((0, 0), (1, 0)), Err(MaslovError::DifferentComponents { .. })));
    assert_eq!(g.relative((0, 1), (0, 2)).unwrap(), Z4::new(-2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn triple_index_symmetry(a in line(), b in line(), l in line()) {
        props::triple_index_symmetry((a, b, l))?;
    }

    #[test]
    fn convex_polygon_index(pts in star_polygon(true), l in line()) {
        props::convex_polygon_index((pts, l))?;
    }

    #[test]
    fn embedded_polygon_index_counts_reflex_corners(pts in star_polygon(false), l in line()) {
        props::embedded_polygon_index((pts, l))?;
    }

    #[test]
    fn reversal_and_cyclic_identities(args in props::reversal_args()) {
        props::reversal_and_cyclic_identities(args)?;
    }

    #[test]
    fn splicing_is_additive(args in props::splice_args()) {
        props::splicing_is_additive(args)?;
    }
}

#[test]
fn slope_constants() {
    assert_eq!(LineSlope::SLOPE_ONE.angle(), FRAC_PI_4);
    assert_eq!(LineSlope::VERTICAL.angle(), FRAC_PI_2);
    assert_eq!(LineSlope::from_angle(PI).angle(), 0.0);
    assert!((LineSlope::from_angle(-FRAC_PI_4).angle() - 3.0 * FRAC_PI_4).abs() < 1e-15);
}
