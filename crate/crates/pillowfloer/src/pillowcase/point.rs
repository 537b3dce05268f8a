use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Default absolute tolerance for lattice and corner coincidence.
pub const LATTICE_TOL: f64 = 1e-9;

/// A point of the branched cover ℝ² → P, in radians.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct LiftPoint {
    pub gamma: f64,
    pub theta: f64,
}

impl LiftPoint {
    pub const fn new(gamma: f64, theta: f64) -> LiftPoint {
        LiftPoint { gamma, theta }
    }

    pub fn dot(self, o: LiftPoint) -> f64 {
        self.gamma * o.gamma + self.theta * o.theta
    }

    /// z-component of the planar cross product.
    pub fn cross(self, o: LiftPoint) -> f64 {
        self.gamma * o.theta - self.theta * o.gamma
    }

    pub fn norm(self) -> f64 {
        self.gamma.hypot(self.theta)
    }

    pub fn dist(self, o: LiftPoint) -> f64 {
        (self - o).norm()
    }

    pub fn lerp(self, o: LiftPoint, t: f64) -> LiftPoint {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.gamma.is_finite() && self.theta.is_finite()
    }

    /// Nearest lattice point `(jπ, kπ)` as `(j, k)`.
    pub fn nearest_lattice(self) -> (i64, i64) {
        ((self.gamma / PI).round() as i64, (self.theta / PI).round() as i64)
    }

    /// Distance to the nearest lattice point of `(πℤ)²`.
    pub fn lattice_distance(self) -> f64 {
        let (j, k) = self.nearest_lattice();
        self.dist(LiftPoint::new(j as f64 * PI, k as f64 * PI))
    }

    pub fn is_corner_lift(self) -> bool {
        self.is_corner_lift_with(LATTICE_TOL)
    }

    /// Both coordinates are multiples of π up to `tol`.
    pub fn is_corner_lift_with(self, tol: f64) -> bool {
        let (j, k) = self.nearest_lattice();
        (self.gamma - j as f64 * PI).abs() <= tol && (self.theta - k as f64 * PI).abs() <= tol
    }

    /// Angle of the vector in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.theta.atan2(self.gamma)
    }
}

impl From<[f64; 2]> for LiftPoint {
    fn from(a: [f64; 2]) -> LiftPoint {
        LiftPoint::new(a[0], a[1])
    }
}

impl From<LiftPoint> for [f64; 2] {
    fn from(p: LiftPoint) -> [f64; 2] {
        [p.gamma, p.theta]
    }
}

impl Add for LiftPoint {
    type Output = LiftPoint;
    fn add(self, o: LiftPoint) -> LiftPoint {
        LiftPoint::new(self.gamma + o.gamma, self.theta + o.theta)
    }
}

impl Sub for LiftPoint {
    type Output = LiftPoint;
    fn sub(self, o: LiftPoint) -> LiftPoint {
        LiftPoint::new(self.gamma - o.gamma, self.theta - o.theta)
    }
}

impl Mul<f64> for LiftPoint {
    type Output = LiftPoint;
    fn mul(self, s: f64) -> LiftPoint {
        LiftPoint::new(self.gamma * s, self.theta * s)
    }
}

impl Neg for LiftPoint {
    type Output = LiftPoint;
    fn neg(self) -> LiftPoint {
        LiftPoint::new(-self.gamma, -self.theta)
    }
}

/// A point of the fundamental domain `[0,π] × [0,2π)`.
///
/// On the fold edges `γ ∈ {0, π}` the representative has `θ ∈ [0, π]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct PillowPoint {
    pub gamma: f64,
    pub theta: f64,
}

impl PillowPoint {
    pub fn lift(self) -> LiftPoint {
        LiftPoint::new(self.gamma, self.theta)
    }

    /// Distance in P between two canonical points, up to `tol` on the seam.
    pub fn approx_eq(self, o: PillowPoint, tol: f64) -> bool {
        let dg = (self.gamma - o.gamma).abs();
        let dt = (self.theta - o.theta).abs();
        dg <= tol && (dt <= tol || (TAU - dt) <= tol)
    }
}

impl From<[f64; 2]> for PillowPoint {
    fn from(a: [f64; 2]) -> PillowPoint {
        PillowPoint { gamma: a[0], theta: a[1] }
    }
}

impl From<PillowPoint> for [f64; 2] {
    fn from(p: PillowPoint) -> [f64; 2] {
        [p.gamma, p.theta]
    }
}
