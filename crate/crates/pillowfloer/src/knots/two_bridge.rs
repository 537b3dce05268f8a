use std::f64::consts::PI;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::invariants::signature_two_bridge;
use super::{KnotError, TwoBridgeSpec};
use crate::curves::{IntersectionPoint, LiftedCurve};
use crate::floer::{
    build_complex, homology, ChainComplexZ4, ComplexComponent, ComplexOptions, HomologyReport,
};
use crate::maslov::{AnchorSource, ComponentGrading, GradingAssignment};
use crate::pillowcase::{canonicalize, z_of_loop_generic, DeckElement, LiftPoint, Rat};
use crate::Z4;

/// A point in the cover with coordinates in units of π.
pub type ExactPoint = (Rat, Rat);

/// Denominator used to round `ε / π` to a rational.
pub const EPS_DENOMINATOR: i128 = 1000;

fn rat(n: i64) -> Rat {
    Rat::from_integer(n as i128)
}

fn to_lift(p: ExactPoint) -> LiftPoint {
    let f = |x: Rat| x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN) * PI;
    LiftPoint::new(f(p.0), f(p.1))
}

fn apply(h: DeckElement, p: ExactPoint) -> ExactPoint {
    let s = rat(h.sigma as i64);
    (s * p.0 + rat(2 * h.m), s * p.1 + rat(2 * h.n))
}

fn sub(a: ExactPoint, b: ExactPoint) -> ExactPoint {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: ExactPoint, b: ExactPoint) -> Rat {
    a.0 * b.1 - a.1 * b.0
}

fn lerp(a: ExactPoint, b: ExactPoint, t: Rat) -> ExactPoint {
    (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
}

/// Endpoints of the arc `t ↦ (qt, (q - p)t)`, `t ∈ [0, π]`.
pub fn two_bridge_vertices(spec: TwoBridgeSpec) -> [ExactPoint; 2] {
    [(Rat::zero(), Rat::zero()), (rat(spec.q), rat(spec.q - spec.p))]
}

/// The linear arc of `K(p, q)` in the pillowcase.
pub fn two_bridge_curve(spec: TwoBridgeSpec) -> Result<LiftedCurve, KnotError> {
    let [a, b] = two_bridge_vertices(spec);
    Ok(LiftedCurve::arc(format!("K({},{})", spec.p, spec.q), vec![to_lift(a), to_lift(b)])?)
}

/// `ε / π` rounded to a multiple of `1 / EPS_DENOMINATOR`.
pub fn rational_eps(eps: f64) -> Result<Rat, KnotError> {
    let e = Rat::new((eps / PI * EPS_DENOMINATOR as f64).round() as i128, EPS_DENOMINATOR);
    if e <= Rat::zero() || e >= Rat::new(1, 4) {
        return Err(KnotError::InvalidSpec(format!("ε = {eps} must lie in (0, π/4) after rounding")));
    }
    Ok(e)
}

/// One period of the piecewise linear figure eight: vertices
/// `(-1+e, -1-e) → (-e, e) → (1+e, 1-e)` in units of π, closed by the
/// translation `(1, 1)`. The first segment has slope above 1, the second
/// below 1.
pub fn pl_figure_eight_vertices(e: Rat) -> [ExactPoint; 3] {
    let one = rat(1);
    [(-one + e, -one - e), (-e, e), (one + e, one - e)]
}

/// The piecewise linear figure eight as a curve, with the segment midpoints
/// added as (collinear) vertices.
pub fn pl_figure_eight(e: Rat) -> Result<LiftedCurve, KnotError> {
    let [v0, v1, v2] = pl_figure_eight_vertices(e);
    let half = Rat::new(1, 2);
    let pts = [v0, lerp(v0, v1, half), v1, lerp(v1, v2, half), v2];
    Ok(LiftedCurve::circle("L0", pts.iter().map(|&p| to_lift(p)).collect(), DeckElement::translation(1, 1))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strand {
    /// The generator next to the corner `(0, 0)`.
    Canonical,
    /// On the strand of L0 with slope below 1.
    Plus,
    /// On the strand of L0 with slope above 1.
    Minus,
}

/// A generator with exact coordinates: `L0(s0) = deck · L1(s1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactGenerator {
    pub label: String,
    /// Position on one period of the two-segment figure eight, in `[0, 2)`.
    pub s0: Rat,
    pub s1: Rat,
    pub point: ExactPoint,
    pub deck: DeckElement,
    pub strand: Strand,
    pub grade: Z4,
}

/// The complex of a 2-bridge knot with its exact data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoBridgeComplex {
    pub spec: TwoBridgeSpec,
    /// `ε / π` as used.
    pub eps_over_pi: Rat,
    pub signature: i64,
    pub generators: Vec<ExactGenerator>,
    /// `z` of the loop from the canonical generator to the graded member of
    /// each pair, indexed by pair.
    pub pair_z: Vec<Z4>,
    pub complex: ChainComplexZ4,
    pub homology: HomologyReport,
}

/// Exact crossings `(segment, t, u, h)` of the figure eight segments with the
/// deck translates of the arc.
fn exact_crossings(l0: &[ExactPoint; 3], arc: &[ExactPoint; 2]) -> Result<Vec<(usize, Rat, Rat, DeckElement)>, KnotError> {
    let f = |x: Rat| x.to_f64().unwrap_or(0.0);
    let lo0 = l0.iter().map(|p| f(p.0).min(f(p.1))).fold(f64::MAX, f64::min);
    let hi0 = l0.iter().map(|p| f(p.0).max(f(p.1))).fold(f64::MIN, f64::max);
    let (g0, g1) = (f(arc[0].0).min(f(arc[1].0)), f(arc[0].0).max(f(arc[1].0)));
    let (t0, t1) = (f(arc[0].1).min(f(arc[1].1)), f(arc[0].1).max(f(arc[1].1)));
    let range = |a: f64, b: f64| ((a / 2.0).floor() as i64 - 1)..=((b / 2.0).ceil() as i64 + 1);
    let mut out = Vec::new();
    for sigma in [1i8, -1] {
        let (ga, gb) = if sigma > 0 { (g0, g1) } else { (-g1, -g0) };
        let (ta, tb) = if sigma > 0 { (t0, t1) } else { (-t1, -t0) };
        for m in range(lo0 - gb, hi0 - ga) {
            for n in range(lo0 - tb, hi0 - ta) {
                let h = DeckElement::new(m, n, sigma);
                let (c, d) = (apply(h, arc[0]), apply(h, arc[1]));
                for seg in 0..2 {
                    let (a, b) = (l0[seg], l0[seg + 1]);
                    let (r, sv) = (sub(b, a), sub(d, c));
                    let denom = cross(r, sv);
                    let qp = sub(c, a);
                    if denom.is_zero() {
                        if cross(qp, r).is_zero() {
                            return Err(KnotError::TwoBridgeStructure("arc overlaps the figure eight".into()));
                        }
                        continue;
                    }
                    let t = cross(qp, sv) / denom;
                    let u = cross(qp, r) / denom;
                    if t >= Rat::zero() && t < rat(1) && u > Rat::zero() && u < rat(1) {
                        out.push((seg, t, u, h));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn tangent_angle(a: LiftPoint, b: LiftPoint) -> f64 {
    let s = (a.cross(b) / (a.norm() * b.norm())).abs().min(1.0);
    s.asin()
}

/// The ℤ/4-graded complex of `K(p, q)` against the piecewise linear figure
/// eight of width `ε`, graded exactly.
///
/// Pairs of generators near the same point of the diagonal differ by 1; the
/// member of each pair on the strand selected by the arc's slope is graded
/// against the canonical generator by `z` of the loop that runs along the
/// figure eight and returns along the arc. The result is checked against the
/// general pipeline on the same curves.
pub fn two_bridge_complex(spec: TwoBridgeSpec, eps: f64) -> Result<TwoBridgeComplex, KnotError> {
    two_bridge_complex_with(spec, eps, signature_two_bridge(spec))
}

pub fn two_bridge_complex_with(spec: TwoBridgeSpec, eps: f64, signature: i64) -> Result<TwoBridgeComplex, KnotError> {
    let e = rational_eps(eps)?;
    let l0v = pl_figure_eight_vertices(e);
    let arcv = two_bridge_vertices(spec);
    let mut raw = exact_crossings(&l0v, &arcv)?;
    if raw.len() != spec.p as usize {
        return Err(KnotError::TwoBridgeStructure(format!("{} crossings, expected {}", raw.len(), spec.p)));
    }
    raw.sort_by_key(|a| a.2);
    let strand_of = |seg: usize| if seg == 0 { Strand::Minus } else { Strand::Plus };
    let graded = if spec.slope().abs() > 1.0 { Strand::Plus } else { Strand::Minus };
    let point = |(seg, t, _, _): &(usize, Rat, Rat, DeckElement)| lerp(l0v[*seg], l0v[*seg + 1], *t);

    let canonical = &raw[0];
    let sigma = Z4::new(signature);
    let mut gens = vec![ExactGenerator {
        label: "r+".into(),
        s0: rat(canonical.0 as i64) + canonical.1,
        s1: canonical.2,
        point: point(canonical),
        deck: canonical.3,
        strand: Strand::Canonical,
        grade: sigma,
    }];
    let mut pair_z = Vec::new();
    for (k, pair) in raw[1..].chunks(2).enumerate() {
        let ell = k + 1;
        let [x, y] = pair else {
            return Err(KnotError::TwoBridgeStructure("unpaired generator".into()));
        };
        if strand_of(x.0) == strand_of(y.0) {
            return Err(KnotError::TwoBridgeStructure(format!("pair {ell} lies on one strand; ε is too large for this arc")));
        }
        let (main, other) = if strand_of(x.0) == graded { (x, y) } else { (y, x) };
        if main.0 != canonical.0 {
            return Err(KnotError::TwoBridgeStructure(format!(
                "pair {ell}: graded generator is not on the canonical generator's strand"
            )));
        }
        // r+ → x° along the figure eight, then back along the arc.
        let h = main.3.compose(canonical.3.inverse());
        let path = [point(canonical), point(main), apply(main.3, lerp(arcv[0], arcv[1], canonical.2))];
        let z = z_of_loop_generic(&path, |p| apply(h, p), 0.0)?;
        pair_z.push(z);
        let g_main = sigma - z;
        let g_other = if graded == Strand::Plus { g_main - Z4::ONE } else { g_main + Z4::ONE };
        for (g, grade) in [(main, g_main), (other, g_other)] {
            let strand = strand_of(g.0);
            let sign = if strand == Strand::Plus { '+' } else { '-' };
            gens.push(ExactGenerator {
                label: format!("x{ell}{sign}"),
                s0: rat(g.0 as i64) + g.1,
                s1: g.2,
                point: point(g),
                deck: g.3,
                strand,
                grade,
            });
        }
    }

    let l0 = pl_figure_eight(e)?;
    let arc = two_bridge_curve(spec)?;
    let tangent_l0 = |seg: usize| to_lift(sub(l0v[seg + 1], l0v[seg]));
    let arc_dir = to_lift(sub(arcv[1], arcv[0]));
    let generators: Vec<IntersectionPoint> = gens
        .iter()
        .map(|g| {
            let seg = g.s0.floor().to_integer() as usize;
            let lift = to_lift(g.point);
            IntersectionPoint {
                s0: (g.s0 * rat(2)).to_f64().unwrap_or(f64::NAN),
                s1: g.s1.to_f64().unwrap_or(f64::NAN),
                point: canonicalize(lift).0,
                lift,
                lift_offset: g.deck,
                angle: tangent_angle(tangent_l0(seg), g.deck.apply_vector(arc_dir)),
            }
        })
        .collect();
    let component = ComplexComponent {
        label: arc.label.clone(),
        kind: arc.kind,
        generators,
        labels: gens.iter().map(|g| g.label.clone()).collect(),
        differential: Vec::new(),
        bigons: Vec::new(),
    };
    let grading = GradingAssignment {
        components: vec![ComponentGrading {
            grades: gens.iter().map(|g| g.grade).collect(),
            anchor: Some(crate::maslov::Anchor { generator: 0, value: sigma, source: AnchorSource::Signature }),
        }],
    };
    let complex = ChainComplexZ4 { l0_label: l0.label.clone(), components: vec![component], grading };
    cross_validate(&l0, &arc, &complex, signature)?;
    let homology = homology(&complex)?;
    Ok(TwoBridgeComplex { spec, eps_over_pi: e, signature, generators: gens, pair_z, complex, homology })
}

/// Runs the general pipeline on the same curves and compares generators,
/// gradings and the differential.
fn cross_validate(l0: &LiftedCurve, arc: &LiftedCurve, exact: &ChainComplexZ4, signature: i64) -> Result<(), KnotError> {
    let opts = ComplexOptions { signature: Some(signature), ..ComplexOptions::default() };
    let generic = build_complex(l0, std::slice::from_ref(arc), &opts)?;
    let (a, b) = (&exact.components[0], &generic.components[0]);
    if a.generators.len() != b.generators.len() {
        return Err(KnotError::OracleMismatch(format!(
            "{} exact generators, {} from the general pipeline",
            a.generators.len(),
            b.generators.len()
        )));
    }
    if !b.differential.is_empty() {
        return Err(KnotError::OracleMismatch(format!("general pipeline found bigons {:?}", b.differential)));
    }
    for (i, x) in a.generators.iter().enumerate() {
        let j = b
            .generators
            .iter()
            .position(|y| y.lift_offset == x.lift_offset && (y.s1 - x.s1).abs() < 1e-9)
            .ok_or_else(|| KnotError::OracleMismatch(format!("generator {} not found", a.labels[i])))?;
        let (ga, gb) = (exact.grading.components[0].grades[i], generic.grading.components[0].grades[j]);
        if ga != gb {
            return Err(KnotError::OracleMismatch(format!("{}: exact grade {ga}, general grade {gb}", a.labels[i])));
        }
    }
    Ok(())
}
