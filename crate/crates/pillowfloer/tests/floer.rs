use std::collections::HashSet;
use std::f64::consts::{PI, TAU};

use pillowfloer::curves::LiftedCurve;
use pillowfloer::floer::{
    build_complex, chain_ranks, check_admissible, homology, vertically_monotonic_fastpath, ComplexOptions, F2Matrix,
    FloerError, GradedRanks, InteriorClass,
};
use pillowfloer::maslov::relative_grading;
use pillowfloer::pillowcase::{DeckElement, LiftPoint};
use pillowfloer::Z4;
use proptest::prelude::*;

mod common;
use common::props::{self, bumped, l0};

fn ranks(l1: &LiftedCurve, eps: f64, amp: f64) -> (GradedRanks, GradedRanks, usize) {
    let cx = build_complex(&l0(eps, amp), std::slice::from_ref(l1), &ComplexOptions::default()).unwrap();
    (chain_ranks(&cx).total, homology(&cx).unwrap().total, cx.components[0].bigons.len())
}

#[test]
fn f2_rank_basics() {
    let mut m = F2Matrix::zeros(3, 3);
    assert_eq!(m.rank(), 0);
    m.set(0, 0, true);
    m.set(1, 1, true);
    m.set(2, 0, true);
    m.set(2, 1, true);
    assert_eq!(m.rank(), 2);
    m.toggle(2, 2);
    assert_eq!(m.rank(), 3);
    let sq = m.mul(&m);
    assert!(sq.get(2, 2) && !sq.is_zero());
    assert_eq!(m.select_columns(&[0]).rank(), 1);
}

/// Brute-force rank: log2 of the size of the column span.
fn span_rank(m: &F2Matrix) -> usize {
    let cols: Vec<u64> =
        (0..m.cols()).map(|c| (0..m.rows()).fold(0u64, |acc, r| acc | ((m.get(r, c) as u64) << r))).collect();
    let mut span = HashSet::new();
    for mask in 0u32..(1 << cols.len()) {
        let v = cols.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0u64, |a, (_, &c)| a ^ c);
        span.insert(v);
    }
    span.len().trailing_zeros() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn f2_rank_matches_span(rows in 1usize..9, cols in 1usize..9, bits in prop::collection::vec(any::<bool>(), 64)) {
        let mut m = F2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, bits[r * 8 + c]);
            }
        }
        prop_assert_eq!(m.rank(), span_rank(&m));
    }
}

#[test]
fn vertical_circle_matches_fastpath() {
    for d in [2i64, 4, 6, 8] {
        let c = bumped(d, 200 * d as usize, 0.0, 0.0);
        let fast = vertically_monotonic_fastpath(&l0(0.1, 0.0), &c).unwrap();
        assert_eq!(fast, GradedRanks::uniform(d as usize / 2));
        let (chain, h, bigons) = ranks(&c, 0.1, 0.0);
        assert_eq!(bigons, 0);
        assert_eq!(chain, fast);
        assert_eq!(h, fast);
    }
}

#[test]
fn fastpath_rejects_non_monotonic() {
    let c = bumped(2, 800, 0.8, 2.4);
    assert!(matches!(vertically_monotonic_fastpath(&l0(0.1, 0.0), &c), Err(FloerError::NotMonotonic { .. })));
}

#[test]
fn bump_adds_a_cancelling_pair() {
    let c = bumped(2, 800, 0.8, 2.4);
    let cx = build_complex(&l0(0.1, 0.0), &[c], &ComplexOptions::default()).unwrap();
    let comp = &cx.components[0];
    assert_eq!(comp.generators.len(), 6);
    assert_eq!(comp.bigons.len(), 2);
    assert!(comp.bigons.iter().all(|b| b.interior_class == InteriorClass::EmbeddedDisk && b.area > 0.0));
    assert_eq!(comp.matrix().rank(), 1);
    assert_eq!(chain_ranks(&cx).total.total(), 6);
    assert_eq!(homology(&cx).unwrap().total, GradedRanks::uniform(1));
}

#[test]
fn homology_is_stable_under_eps_and_g() {
    for (theta0, amp) in [(2.4, 0.8), (2.4 + PI, 0.8), (2.0, 0.9), (5.5, 0.7)] {
        let c = bumped(2, 800, amp, theta0);
        for eps in [0.05, 0.1, 0.2] {
            for g in [0.0, 0.05] {
                let (_, h, _) = ranks(&c, eps, g);
                assert_eq!(h, GradedRanks::uniform(1), "θ0 = {theta0}, ε = {eps}, g = {g}");
            }
        }
    }
}

#[test]
fn bigon_endpoints_differ_by_one() {
    let c = bumped(4, 1600, 0.8, 2.4);
    let l = l0(0.1, 0.0);
    let cx = build_complex(&l, std::slice::from_ref(&c), &ComplexOptions::default()).unwrap();
    let comp = &cx.components[0];
    assert!(!comp.bigons.is_empty());
    for b in &comp.bigons {
        let gr = relative_grading(&l, &c, &comp.generators[b.from], &comp.generators[b.to]).unwrap();
        assert_eq!(gr, Z4::ONE);
        let reverse = comp.bigons.iter().any(|o| o.from == b.to && o.to == b.from);
        assert!(!reverse);
    }
    let m = comp.matrix();
    assert!(m.mul(&m).is_zero());
    assert_eq!(homology(&cx).unwrap().total, GradedRanks::uniform(2));
}

#[test]
fn signature_anchor_is_ignored_on_circles() {
    let c = bumped(2, 400, 0.0, 0.0);
    let opts = ComplexOptions { signature: Some(2), ..ComplexOptions::default() };
    let cx = build_complex(&l0(0.1, 0.0), &[c], &opts).unwrap();
    assert!(cx.grading.components[0].anchor.is_none());
}

#[test]
fn admissibility() {
    let horiz = |theta: f64| {
        let verts = (0..=100).map(|i| LiftPoint::new(0.3 + TAU * i as f64 / 100.0, theta)).collect();
        LiftedCurve::circle("h", verts, DeckElement::translation(1, 0)).unwrap()
    };
    assert!(matches!(check_admissible(&horiz(0.5), &horiz(1.0)), Err(FloerError::NotAdmissible { .. })));
    assert!(check_admissible(&l0(0.1, 0.0), &horiz(1.0)).is_ok());
    let arc = LiftedCurve::arc("a", vec![LiftPoint::new(0.0, 0.0), LiftPoint::new(PI, 3.0 * PI)]).unwrap();
    assert!(matches!(check_admissible(&arc, &arc), Err(FloerError::NotAdmissible { .. })));
    assert!(check_admissible(&l0(0.1, 0.0), &arc).is_ok());
}

#[test]
fn obstructed_input_is_rejected() {
    let n = 64;
    let corner = (0..=n)
        .map(|i| {
            let a = 0.1 + PI * i as f64 / n as f64;
            LiftPoint::new(0.4 * a.cos(), 0.4 * a.sin())
        })
        .collect();
    let c = LiftedCurve::circle("corner", corner, DeckElement::rotation(0, 0)).unwrap();
    let r = build_complex(&l0(0.1, 0.0), &[c], &ComplexOptions::default());
    assert!(matches!(r, Err(FloerError::NotRestricted { .. })));
}

#[test]
fn homology_of_an_empty_component() {
    let c = bumped(2, 400, 0.0, 0.0);
    let mut cx = build_complex(&l0(0.1, 0.0), &[c], &ComplexOptions::default()).unwrap();
    cx.components[0].generators.clear();
    cx.components[0].differential.clear();
    cx.grading.components[0].grades.clear();
    assert_eq!(homology(&cx).unwrap().total, GradedRanks::default());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn grading_is_additive_and_path_independent(args in props::generator_triples()) {
        props::grading_is_additive_and_path_independent(args)?;
    }

    #[test]
    fn differential_lowers_grading_and_squares_to_zero(args in props::complex_args()) {
        props::differential_properties(args)?;
    }
}

fn running_example() -> LiftedCurve {
    let text = include_str!("../../../fixtures/figure_re1.json");
    pillowfloer::curves::curves_from_json(text).unwrap().remove(0)
}

#[test]
fn running_example_complex() {
    let l1 = running_example();
    let cx = build_complex(&l0(0.1, 0.0), &[l1], &ComplexOptions::default()).unwrap();
    let comp = &cx.components[0];
    assert_eq!(comp.generators.len(), 8);
    assert_eq!(chain_ranks(&cx).total, GradedRanks::uniform(2));
    assert_eq!(comp.bigons.len(), 2);
    let ends: HashSet<usize> = comp.differential.iter().flat_map(|&(p, q)| [p, q]).collect();
    assert_eq!(ends.len(), 4, "the two bigons share an endpoint");
    for &(p, q) in &comp.differential {
        let (gp, gq) = (cx.grading.grade(0, p).unwrap(), cx.grading.grade(0, q).unwrap());
        assert_eq!(gp - gq, Z4::ONE);
    }
    assert_eq!(homology(&cx).unwrap().total, GradedRanks::uniform(1));
}

#[test]
fn running_example_is_stable_in_eps_and_g() {
    let l1 = running_example();
    for eps in [0.05, 0.1, 0.2] {
        for amp in [0.0, 0.05] {
            let (c, h, b) = ranks(&l1, eps, amp);
            assert_eq!((c, h, b), (GradedRanks::uniform(2), GradedRanks::uniform(1), 2), "ε={eps} g={amp}");
        }
    }
}
