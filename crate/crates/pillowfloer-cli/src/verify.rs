use std::f64::consts::{FRAC_PI_2, PI, TAU};

use pillowfloer::curves::{curves_from_json, curves_to_json, figure_eight, CurveError, LiftedCurve, DEFAULT_SAMPLES};
use pillowfloer::floer::{build_complex, ComplexOptions, FloerError};
use pillowfloer::knots::{signature_two_bridge, two_bridge_complex, TwoBridgeSpec};
use pillowfloer::maslov::{mas_polygon, relative_grading, triple_index, LineSlope, MaslovError};
use pillowfloer::pillowcase::{z_of_loop, DeckElement, LiftPoint, PerturbationFunction};
use pillowfloer::Z4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITES: [&str; 5] = ["z", "maslov", "floer", "curves", "knots"];

/// Outcome of one suite.
#[derive(Debug, Default)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    /// Cases skipped as degenerate (non-transverse or inadmissible input).
    pub rejected: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

enum Case {
    Pass,
    Reject,
    Fail(String),
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Case {
    if cond {
        Case::Pass
    } else {
        Case::Fail(msg())
    }
}

pub fn run(name: &str, cases: usize, seed: u64) -> Option<SuiteResult> {
    let (name, case): (&'static str, fn(&mut ChaCha8Rng, usize) -> Case) = match name {
        "z" => ("z", z_case),
        "maslov" => ("maslov", maslov_case),
        "floer" => ("floer", floer_case),
        "curves" => ("curves", curves_case),
        "knots" => ("knots", knots_case),
        _ => return None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteResult { name, ..SuiteResult::default() };
    for i in 0..cases {
        match case(&mut rng, i) {
            Case::Pass => out.passed += 1,
            Case::Reject => out.rejected += 1,
            Case::Fail(msg) => out.failures.push(format!("case {i}: {msg}")),
        }
    }
    Some(out)
}

/// `z` of a round loop is twice the number of enclosed lattice points, mod 4,
/// and changes sign under reversal.
fn z_case(rng: &mut ChaCha8Rng, _: usize) -> Case {
    let c = LiftPoint::new(rng.gen_range(-TAU..2.0 * TAU), rng.gen_range(-TAU..2.0 * TAU));
    let r = rng.gen_range(0.1..2.5);
    let mut inside = 0;
    for m in -4..=8 {
        for n in -4..=8 {
            let d = LiftPoint::new(m as f64 * PI, n as f64 * PI).dist(c);
            if (d - r).abs() < 0.05 {
                return Case::Reject;
            }
            inside += i64::from(d < r);
        }
    }
    let k = 48;
    let mut pts: Vec<LiftPoint> =
        (0..=k).map(|i| c + LiftPoint::new((TAU * i as f64 / k as f64).cos(), (TAU * i as f64 / k as f64).sin()) * r).collect();
    pts[k] = pts[0];
    let z = match z_of_loop(&pts, DeckElement::IDENTITY) {
        Ok(z) => z,
        Err(e) => return Case::Fail(e.to_string()),
    };
    let expected = Z4::new(2 * inside);
    if z != expected {
        return Case::Fail(format!("loop around {inside} lattice points has z = {z}, expected {expected}"));
    }
    pts.reverse();
    match z_of_loop(&pts, DeckElement::IDENTITY) {
        Ok(zr) => check(zr == -z, || format!("reversed loop has z = {zr}, expected {}", -z)),
        Err(e) => Case::Fail(e.to_string()),
    }
}

/// Triple-index symmetry and the index `3 − n` of a clockwise convex n-gon.
fn maslov_case(rng: &mut ChaCha8Rng, _: usize) -> Case {
    let line = |rng: &mut ChaCha8Rng| LineSlope::from_angle(rng.gen_range(0.0..PI));
    let (a, b, l) = (line(rng), line(rng), line(rng));
    if (a.angle() - b.angle()).abs() > 1e-6 {
        match (triple_index(a, b, l), triple_index(b, a, l)) {
            (Ok(x), Ok(y)) if x + y == 1 => {}
            (Ok(x), Ok(y)) => return Case::Fail(format!("triple indices sum to {}", x + y)),
            (Err(e), _) | (_, Err(e)) => return Case::Fail(e.to_string()),
        }
    }
    let n = rng.gen_range(3..=7);
    let gaps: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let total: f64 = gaps.iter().sum();
    let mut angle = rng.gen_range(0.0..PI);
    let mut pts = Vec::with_capacity(n);
    for gap in &gaps {
        pts.push(LiftPoint::new(3.0 + angle.cos(), 2.0 + angle.sin()));
        angle -= TAU * gap / total;
    }
    let sides: Vec<Vec<LiftPoint>> = (0..n).map(|i| vec![pts[i], pts[(i + 1) % n]]).collect();
    match mas_polygon(&sides, l) {
        Ok(m) => check(m == 3 - n as i64, || format!("convex {n}-gon has index {m}")),
        Err(MaslovError::EqualLines { .. }) => Case::Reject,
        Err(e) => Case::Fail(e.to_string()),
    }
}

/// Vertical circle of degree `d` near `γ = π/2` with a sideways bump.
fn bumped(d: i64, amp: f64, theta0: f64) -> LiftedCurve {
    let n = 300 * d as usize;
    let verts = (0..=n)
        .map(|i| {
            let t = TAU * d as f64 * i as f64 / n as f64 + 0.2;
            let b = amp * (-((t - theta0) / 0.25).powi(2)).exp();
            LiftPoint::new(FRAC_PI_2 + 0.1 * ((t - 0.2) / d as f64).cos() + b, t)
        })
        .collect();
    LiftedCurve::circle("b", verts, DeckElement::translation(0, d)).expect("closed by construction")
}

fn random_pair(rng: &mut ChaCha8Rng) -> Result<(LiftedCurve, LiftedCurve), CurveError> {
    let d = 2 * rng.gen_range(1..=2);
    let l1 = bumped(d, rng.gen_range(0.0..1.0), rng.gen_range(1.2..5.2));
    let l0 = figure_eight(rng.gen_range(0.04..0.2), &PerturbationFunction::sine(rng.gen_range(-0.05..0.05)), DEFAULT_SAMPLES)?;
    Ok((l0, l1))
}

/// `∂` lowers the grading by one, squares to zero, and bigons join
/// generators of relative grading one.
fn floer_case(rng: &mut ChaCha8Rng, _: usize) -> Case {
    let (l0, l1) = match random_pair(rng) {
        Ok(p) => p,
        Err(e) => return Case::Fail(e.to_string()),
    };
    let cx = match build_complex(&l0, std::slice::from_ref(&l1), &ComplexOptions::default()) {
        Ok(cx) => cx,
        Err(FloerError::Curve(CurveError::NonTransverse { .. })) | Err(FloerError::NotAdmissible { .. }) => return Case::Reject,
        Err(e) => return Case::Fail(e.to_string()),
    };
    let comp = &cx.components[0];
    for &(p, q) in &comp.differential {
        let (gp, gq) = (cx.grading.grade(0, p), cx.grading.grade(0, q));
        if gp.zip(gq).map(|(a, b)| a - b) != Some(Z4::ONE) {
            return Case::Fail(format!("∂ {p} → {q} joins gradings {gp:?} and {gq:?}"));
        }
    }
    for b in &comp.bigons {
        match relative_grading(&l0, &l1, &comp.generators[b.from], &comp.generators[b.to]) {
            Ok(g) if g == Z4::ONE => {}
            Ok(g) => return Case::Fail(format!("bigon {} → {} has gr = {g}", b.from, b.to)),
            Err(e) => return Case::Fail(e.to_string()),
        }
    }
    let m = comp.matrix();
    check(m.mul(&m).is_zero(), || "∂² ≠ 0".into())
}

/// Exported curves re-import unchanged and give the same complex.
fn curves_case(rng: &mut ChaCha8Rng, i: usize) -> Case {
    let (l0, l1) = match random_pair(rng) {
        Ok(p) => p,
        Err(e) => return Case::Fail(e.to_string()),
    };
    let curves = vec![l0, l1];
    let back = match curves_from_json(&curves_to_json(&curves)) {
        Ok(c) => c,
        Err(e) => return Case::Fail(e.to_string()),
    };
    if back != curves {
        return Case::Fail("re-imported curves differ".into());
    }
    // Complexes are costly; compare them on a sample of cases.
    if !i.is_multiple_of(10) {
        return Case::Pass;
    }
    let opts = ComplexOptions::default();
    match (build_complex(&curves[0], &curves[1..], &opts), build_complex(&back[0], &back[1..], &opts)) {
        (Ok(a), Ok(b)) => check(a == b, || "re-imported curves give a different complex".into()),
        (Err(a), Err(b)) if a == b => Case::Reject,
        (a, b) => Case::Fail(format!("complexes differ: {:?} vs {:?}", a.err(), b.err())),
    }
}

/// 2-bridge complexes have rank `p` with zero differential, and mirroring
/// negates the signature.
fn knots_case(rng: &mut ChaCha8Rng, _: usize) -> Case {
    let p = 2 * rng.gen_range(1..=10) + 1;
    let q = rng.gen_range(1 - p..p);
    let Ok(spec) = TwoBridgeSpec::new(p, q) else {
        return Case::Reject;
    };
    let mirror = TwoBridgeSpec { p, q: -q };
    if signature_two_bridge(mirror) != -signature_two_bridge(spec) {
        return Case::Fail(format!("K({p},{q}): mirror signature is not negated"));
    }
    match two_bridge_complex(spec, 0.05) {
        Ok(cx) => {
            let rank = cx.homology.total.total() as i64;
            let bigons = cx.complex.components[0].differential.len();
            check(rank == p && bigons == 0, || format!("K({p},{q}): rank {rank} with {bigons} bigons"))
        }
        Err(e) => Case::Fail(format!("K({p},{q}): {e}")),
    }
}
