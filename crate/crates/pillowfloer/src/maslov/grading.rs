use serde::{Deserialize, Serialize};

use super::index::{path_maslov, triple_index, LineSlope};
use super::MaslovError;
use crate::curves::{IntersectionPoint, LiftedCurve};
use crate::pillowcase::{z_of_loop, DeckElement, LiftPoint};
use crate::Z4;

/// Lifted loop `L0(α0) ∗ L1(α1)` used to compare two generators.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectingLoop {
    /// Parameter range of α0 on L0, from p to a lift of q.
    pub alpha0: (f64, f64),
    /// Parameter range of α1 on L1, from q to a lift of p.
    pub alpha1: (f64, f64),
    /// Deck element placing the L1 lift that carries α1.
    pub l1_deck: DeckElement,
    pub points: Vec<LiftPoint>,
    /// `points.last() = closure · points[0]`.
    pub closure: DeckElement,
}

/// Shortest shift `s + kN` of `s` towards `from` on a circle.
fn nearest_period(c: &LiftedCurve, from: f64, s: f64) -> i64 {
    if !c.is_circle() {
        return 0;
    }
    let n = c.period();
    ((from - s) / n).round() as i64
}

/// The loop running along L0 from `p` to `q` and back along L1, with α0
/// and α1 wrapping `k0` and `k1` extra periods.
pub fn connecting_loop_with(
    l0: &LiftedCurve,
    l1: &LiftedCurve,
    p: &IntersectionPoint,
    q: &IntersectionPoint,
    k0: i64,
    k1: i64,
) -> ConnectingLoop {
    let q0 = q.s0 + k0 as f64 * l0.period();
    let p1 = p.s1 + k1 as f64 * l1.period();
    let deck = l0.closure.pow(k0).compose(q.lift_offset);
    let mut points = l0.path(p.s0, q0);
    points.extend(l1.path(q.s1, p1).into_iter().skip(1).map(|x| deck.apply(x)));
    let closure = deck.compose(l1.closure.pow(k1)).compose(p.lift_offset.inverse());
    ConnectingLoop { alpha0: (p.s0, q0), alpha1: (q.s1, p1), l1_deck: deck, points, closure }
}

/// [`connecting_loop_with`] using the shortest parameter paths.
pub fn connecting_loop(
    l0: &LiftedCurve,
    l1: &LiftedCurve,
    p: &IntersectionPoint,
    q: &IntersectionPoint,
) -> ConnectingLoop {
    let k0 = if l0.is_circle() { nearest_period(l0, p.s0, q.s0) } else { 0 };
    let k1 = if l1.is_circle() { nearest_period(l1, q.s1, p.s1) } else { 0 };
    connecting_loop_with(l0, l1, p, q, k0, k1)
}

/// `τ(L0, L1, ℓ₁)` at an intersection point.
pub fn corner_index(l0: &LiftedCurve, l1: &LiftedCurve, x: &IntersectionPoint) -> Result<u8, MaslovError> {
    triple_index(
        LineSlope::from_direction(l0.tangent_at(x.s0)),
        LineSlope::from_direction(l1.tangent_at(x.s1)),
        LineSlope::SLOPE_ONE,
    )
}

/// Integer lift of the grading formula along a given connecting loop,
/// without the z term.
pub fn loop_maslov_terms(
    l0: &LiftedCurve,
    l1: &LiftedCurve,
    p: &IntersectionPoint,
    q: &IntersectionPoint,
    lp: &ConnectingLoop,
) -> Result<i64, MaslovError> {
    let l = LineSlope::SLOPE_ONE;
    let mu0 = path_maslov(l0, lp.alpha0.0, lp.alpha0.1, l)?;
    let mu1 = path_maslov(l1, lp.alpha1.0, lp.alpha1.1, l)?;
    let tp = corner_index(l0, l1, p)? as i64;
    let tq = corner_index(l0, l1, q)? as i64;
    Ok(mu0 + mu1 + tp - tq)
}

/// Relative grading `gr(p, q)` along a chosen connecting loop.
pub fn relative_grading_along(
    l0: &LiftedCurve,
    l1: &LiftedCurve,
    p: &IntersectionPoint,
    q: &IntersectionPoint,
    lp: &ConnectingLoop,
) -> Result<Z4, MaslovError> {
    let terms = loop_maslov_terms(l0, l1, p, q, lp)?;
    let z = z_of_loop(&lp.points, lp.closure)?;
    Ok(Z4::new(terms) + z)
}

/// Relative grading `gr(p, q)` of two generators of `C(L0, L1)`.
pub fn relative_grading(
    l0: &LiftedCurve,
    l1: &LiftedCurve,
    p: &IntersectionPoint,
    q: &IntersectionPoint,
) -> Result<Z4, MaslovError> {
    relative_grading_along(l0, l1, p, q, &connecting_loop(l0, l1, p, q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnchorSource {
    Signature,
    User,
    /// Carried from a smaller ε along a deformation of L0.
    Continuation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub generator: usize,
    pub value: Z4,
    pub source: AnchorSource,
}

/// Gradings of the generators of one L1-component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentGrading {
    pub grades: Vec<Z4>,
    pub anchor: Option<Anchor>,
}

/// Gradings for every component of `C(L0, L1)`; values within a component
/// are determined up to a common shift until anchored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingAssignment {
    pub components: Vec<ComponentGrading>,
}

impl GradingAssignment {
    /// Grades the generators of one component relative to the first one,
    /// which gets grading 0.
    pub fn compute_component(
        l0: &LiftedCurve,
        l1: &LiftedCurve,
        generators: &[IntersectionPoint],
    ) -> Result<ComponentGrading, MaslovError> {
        let grades = match generators.first() {
            None => Vec::new(),
            Some(base) => generators
                .iter()
                .map(|x| relative_grading(l0, l1, x, base))
                .collect::<Result<_, _>>()?,
        };
        Ok(ComponentGrading { grades, anchor: None })
    }

    pub fn grade(&self, component: usize, generator: usize) -> Option<Z4> {
        self.components.get(component)?.grades.get(generator).copied()
    }

    /// `gr(p) − gr(q)` for two generators of the same component.
    pub fn relative(&self, a: (usize, usize), b: (usize, usize)) -> Result<Z4, MaslovError> {
        if a.0 != b.0 {
            return Err(MaslovError::DifferentComponents { a: a.0, b: b.0 });
        }
        let ga = self.grade(a.0, a.1).ok_or(MaslovError::UnknownGenerator { component: a.0, generator: a.1 })?;
        let gb = self.grade(b.0, b.1).ok_or(MaslovError::UnknownGenerator { component: b.0, generator: b.1 })?;
        Ok(ga - gb)
    }
}

/// Shifts one component so `generator` has grading `value`.
pub fn anchor_absolute(
    grading: &GradingAssignment,
    component: usize,
    generator: usize,
    value: Z4,
    source: AnchorSource,
) -> Result<GradingAssignment, MaslovError> {
    let current = grading
        .grade(component, generator)
        .ok_or(MaslovError::UnknownGenerator { component, generator })?;
    let shift = value - current;
    let mut out = grading.clone();
    let comp = &mut out.components[component];
    for g in &mut comp.grades {
        *g += shift;
    }
    comp.anchor = Some(Anchor { generator, value, source });
    Ok(out)
}
