use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::pillowcase::{DeckElement, LiftPoint, LATTICE_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Circle,
    Arc,
}

/// An immersed circle or proper arc in the pillowcase, stored as a polyline
/// in the branched cover.
///
/// Parameters are polyline positions: `s = i + λ` lies on segment `i` at
/// fraction `λ`. A circle's parameter is unbounded, with segment `i + N`
/// equal to `closure` applied to segment `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftedCurve {
    pub kind: CurveKind,
    pub label: String,
    pub vertices: Vec<LiftPoint>,
    pub closure: DeckElement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limiting_slopes: Option<(f64, f64)>,
}

impl LiftedCurve {
    /// A circle whose last vertex is `closure` applied to the first.
    pub fn circle(label: impl Into<String>, mut vertices: Vec<LiftPoint>, closure: DeckElement) -> Result<Self, CurveError> {
        let label = label.into();
        if vertices.len() < 4 {
            return Err(CurveError::TooFewVertices { label, count: vertices.len() });
        }
        let first = vertices[0];
        let last = vertices.len() - 1;
        let gap = closure.apply(first).dist(vertices[last]);
        if gap > 1e-7 * (1.0 + first.norm()) {
            return Err(CurveError::ClosureMismatch { label, gap });
        }
        vertices[last] = closure.apply(first);
        let c = LiftedCurve { kind: CurveKind::Circle, label, vertices, closure, limiting_slopes: None };
        c.validate()?;
        Ok(c)
    }

    /// An arc between corner lifts; endpoints are snapped onto the lattice.
    pub fn arc(label: impl Into<String>, mut vertices: Vec<LiftPoint>) -> Result<Self, CurveError> {
        let label = label.into();
        if vertices.len() < 2 {
            return Err(CurveError::TooFewVertices { label, count: vertices.len() });
        }
        for idx in [0, vertices.len() - 1] {
            let p = vertices[idx];
            if !p.is_corner_lift_with(1e-7) {
                return Err(CurveError::ArcEndNotCorner { label, at: p });
            }
            let (j, k) = p.nearest_lattice();
            vertices[idx] = LiftPoint::new(j as f64 * std::f64::consts::PI, k as f64 * std::f64::consts::PI);
        }
        let n = vertices.len();
        let slope = |a: LiftPoint, b: LiftPoint| (b.theta - a.theta) / (b.gamma - a.gamma);
        let slopes = (slope(vertices[0], vertices[1]), slope(vertices[n - 2], vertices[n - 1]));
        let c = LiftedCurve {
            kind: CurveKind::Arc,
            label,
            vertices,
            closure: DeckElement::IDENTITY,
            limiting_slopes: Some(slopes),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn is_circle(&self) -> bool {
        self.kind == CurveKind::Circle
    }

    /// Number of segments in one period (circle) or in the whole arc.
    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Parameter length of one period or of the arc.
    pub fn period(&self) -> f64 {
        self.segment_count() as f64
    }

    /// Splits a circle index into `(period, local index)`.
    fn split(&self, i: i64) -> (i64, usize) {
        let n = self.segment_count() as i64;
        (i.div_euclid(n), i.rem_euclid(n) as usize)
    }

    /// Vertex `i`, for any integer `i` on circles.
    pub fn vertex(&self, i: i64) -> LiftPoint {
        match self.kind {
            CurveKind::Arc => self.vertices[i as usize],
            CurveKind::Circle => {
                let (k, j) = self.split(i);
                self.closure.pow(k).apply(self.vertices[j])
            }
        }
    }

    pub fn segment(&self, i: i64) -> (LiftPoint, LiftPoint) {
        (self.vertex(i), self.vertex(i + 1))
    }

    /// Unit direction of segment `i`.
    pub fn direction(&self, i: i64) -> LiftPoint {
        let (a, b) = self.segment(i);
        let d = b - a;
        d * (1.0 / d.norm())
    }

    fn segment_of(&self, s: f64) -> (i64, f64) {
        let n = self.segment_count() as i64;
        let mut i = s.floor() as i64;
        if self.kind == CurveKind::Arc {
            i = i.clamp(0, n - 1);
        }
        (i, s - i as f64)
    }

    pub fn point_at(&self, s: f64) -> LiftPoint {
        let (i, lam) = self.segment_of(s);
        let (a, b) = self.segment(i);
        a.lerp(b, lam)
    }

    /// Unit tangent at `s`, taken from the segment containing it.
    pub fn tangent_at(&self, s: f64) -> LiftPoint {
        self.direction(self.segment_of(s).0)
    }

    /// Polyline from `point_at(from)` to `point_at(to)` following the curve.
    pub fn path(&self, from: f64, to: f64) -> Vec<LiftPoint> {
        let mut out = vec![self.point_at(from)];
        if to >= from {
            let first = from.floor() as i64 + 1;
            let last = to.ceil() as i64 - 1;
            for i in first..=last {
                out.push(self.vertex(i));
            }
        } else {
            let first = from.ceil() as i64 - 1;
            let last = to.floor() as i64 + 1;
            let mut i = first;
            while i >= last {
                out.push(self.vertex(i));
                i -= 1;
            }
        }
        let end = self.point_at(to);
        if out.last().is_none_or(|p| p.dist(end) > 1e-14) {
            out.push(end);
        }
        if out.len() == 1 {
            out.push(end);
        }
        out
    }

    /// Bounding box `(γmin, θmin, γmax, θmax)` of the stored vertices.
    pub fn bbox(&self) -> [f64; 4] {
        bbox(&self.vertices)
    }

    /// Applies a vertexwise map that commutes with the deck action.
    pub fn map_vertices(&self, f: impl Fn(LiftPoint) -> LiftPoint) -> Result<LiftedCurve, CurveError> {
        let vertices: Vec<LiftPoint> = self.vertices.iter().map(|&p| f(p)).collect();
        match self.kind {
            CurveKind::Circle => LiftedCurve::circle(self.label.clone(), vertices, self.closure),
            CurveKind::Arc => LiftedCurve::arc(self.label.clone(), vertices),
        }
    }

    /// The same curve with a deck element applied to its lift.
    pub fn translated(&self, h: DeckElement) -> LiftedCurve {
        let mut c = self.clone();
        c.vertices = self.vertices.iter().map(|&p| h.apply(p)).collect();
        c.closure = h.compose(self.closure).compose(h.inverse());
        c
    }

    /// Checks the polyline invariants.
    pub fn validate(&self) -> Result<(), CurveError> {
        let n = self.segment_count();
        for i in 0..n {
            let (a, b) = self.segment(i as i64);
            if !a.is_finite() || !b.is_finite() {
                return Err(CurveError::NonFinite { label: self.label.clone() });
            }
            if a.dist(b) <= 1e-13 {
                return Err(CurveError::RepeatedVertex { label: self.label.clone(), index: i });
            }
        }
        let turns = match self.kind {
            CurveKind::Circle => n,
            CurveKind::Arc => n - 1,
        };
        for i in 0..turns as i64 {
            let turn = turning_angle(self.direction(i), self.direction(i + 1));
            if turn.abs() >= FRAC_PI_2 {
                return Err(CurveError::SharpTurn { label: self.label.clone(), index: (i + 1) as usize, angle: turn });
            }
        }
        let interior = match self.kind {
            CurveKind::Circle => 0..n,
            CurveKind::Arc => 1..n,
        };
        for i in interior {
            if self.vertices[i].lattice_distance() <= LATTICE_TOL {
                return Err(CurveError::LatticeVertex { label: self.label.clone(), index: i });
            }
        }
        Ok(())
    }
}

/// Signed angle rotating direction `a` onto direction `b`, in `(-π, π]`.
pub fn turning_angle(a: LiftPoint, b: LiftPoint) -> f64 {
    a.cross(b).atan2(a.dot(b))
}

pub fn bbox(pts: &[LiftPoint]) -> [f64; 4] {
    let mut bb = [f64::MAX, f64::MAX, f64::MIN, f64::MIN];
    for p in pts {
        bb[0] = bb[0].min(p.gamma);
        bb[1] = bb[1].min(p.theta);
        bb[2] = bb[2].max(p.gamma);
        bb[3] = bb[3].max(p.theta);
    }
    bb
}
