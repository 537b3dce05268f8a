//! Immersed circles and proper arcs in the pillowcase as lifted polylines.

mod checks;
mod curve;
mod figure_eight;
mod homotopy;
mod intersect;
mod io;

pub use checks::{
    check_restricted, check_unobstructed, is_vertically_monotonic, vertical_degree, RestrictedReport,
    UnobstructedReport,
};
pub use curve::{bbox, turning_angle, CurveKind, LiftedCurve};
pub use figure_eight::{figure_eight, figure_eight_time, DEFAULT_SAMPLES};
pub use homotopy::{cyclic_word, CyclicWord};
pub use intersect::{intersections, intersections_with, self_intersections, IntersectionPoint, ANGLE_TOL};
pub(crate) use intersect::segment_crossing;
pub use io::{curves_from_json, curves_to_json};

use crate::maslov::MaslovError;
use crate::pillowcase::{DeckElement, LiftPoint, PerturbationFunction, PillowError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("ε must be positive, got {0}")]
    BadEpsilon(f64),
    #[error("curve `{label}` has too few vertices ({count})")]
    TooFewVertices { label: String, count: usize },
    #[error("curve `{label}` does not close: last vertex misses closure image by {gap:.3e}")]
    ClosureMismatch { label: String, gap: f64 },
    #[error("arc `{label}` ends at ({:.6}, {:.6}), which is not a corner lift", at.gamma, at.theta)]
    ArcEndNotCorner { label: String, at: LiftPoint },
    #[error("curve `{label}` has non-finite coordinates")]
    NonFinite { label: String },
    #[error("curve `{label}` repeats vertex {index}")]
    RepeatedVertex { label: String, index: usize },
    #[error("curve `{label}` turns by {angle:.4} rad at vertex {index}; refine the sampling")]
    SharpTurn { label: String, index: usize, angle: f64 },
    #[error("curve `{label}` has vertex {index} on a lattice point")]
    LatticeVertex { label: String, index: usize },
    #[error("non-transverse crossing at s0 = {s0:.6}, s1 = {s1:.6} near ({:.6}, {:.6})", at.gamma, at.theta)]
    NonTransverse { s0: f64, s1: f64, at: LiftPoint },
    #[error("curve `{label}` is not a circle")]
    NotACircle { label: String },
    #[error("curve `{label}` has non-integral vertical degree {value:.6}")]
    NonIntegralDegree { label: String, value: f64 },
    #[error("curve file: {0}")]
    Json(String),
    #[error(transparent)]
    Pillow(#[from] PillowError),
    #[error(transparent)]
    Maslov(#[from] Box<MaslovError>),
}

impl From<MaslovError> for CurveError {
    fn from(e: MaslovError) -> Self {
        CurveError::Maslov(Box::new(e))
    }
}

/// Applies `c_g(·, s)` to every vertex.
pub fn apply_isotopy_cg(c: &LiftedCurve, g: &PerturbationFunction, s: f64) -> Result<LiftedCurve, CurveError> {
    c.map_vertices(|p| crate::pillowcase::isotopy_cg(p, g, s))
}

/// Applies the collar shear `(γ, θ) ↦ (γ, θ + 2f(γ + π))` to every vertex.
pub fn apply_shear(c: &LiftedCurve, f: &PerturbationFunction) -> Result<LiftedCurve, CurveError> {
    c.map_vertices(|p| crate::pillowcase::shear(p, f))
}

/// Applies the `(p,q)` shear to every vertex.
pub fn apply_pq_shear(c: &LiftedCurve, p: i64, q: i64, phi: &PerturbationFunction) -> Result<LiftedCurve, CurveError> {
    crate::pillowcase::pq_shear(LiftPoint::new(0.0, 0.0), p, q, phi)?;
    c.map_vertices(|x| crate::pillowcase::pq_shear(x, p, q, phi).expect("coprimality checked"))
}

/// Closure element of a lifted path, if it closes up to `tol`.
pub fn closure_of(points: &[LiftPoint], tol: f64) -> Option<DeckElement> {
    DeckElement::relating(*points.first()?, *points.last()?, tol)
}
