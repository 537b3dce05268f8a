//! Curves in the pillowcase coming from 2-bridge knots and torus knots, and
//! their Floer complexes against the figure eight.

mod invariants;
mod project;
mod psi;
mod quaternion;
mod spec;
mod torus;
mod trace;
mod two_bridge;

pub use invariants::{alexander_abs_sum_torus, alexander_torus, signature_torus, signature_two_bridge};
pub use psi::{
    boundary_images, peripheral_images, psi, psi_full, psi_jacobian, psi_jacobian_full, BoxPoint, PeripheralImages,
};
pub use project::{pillow_coords, unfold, unfold_next, COPLANAR_TOL};
pub use quaternion::Quaternion;
pub use spec::{TorusSpec, TwoBridgeSpec, DEFAULT_EPS_A, DEFAULT_EPS_B};
pub use torus::{
    continued_grades, known_structure, primitive_circle, torus_knot_homology, TorusComponent, TorusOptions, TorusReport, ANCHOR_EPS, RETRY_DELTAS,
};
pub use trace::{
    sign_change_cell_count, trace_character_variety, CharVarietyComponent, ComponentKind, Endpoint, Face, SidecarRecord, TraceOptions,
    TraceReport,
};
pub use two_bridge::{
    pl_figure_eight, pl_figure_eight_vertices, rational_eps, two_bridge_complex, two_bridge_complex_with,
    two_bridge_curve, two_bridge_vertices, ExactGenerator, ExactPoint, Strand, TwoBridgeComplex, EPS_DENOMINATOR,
};

use crate::curves::CurveError;
use crate::floer::FloerError;
use crate::maslov::MaslovError;
use crate::pillowcase::PillowError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KnotError {
    #[error("invalid knot: {0}")]
    InvalidSpec(String),
    #[error("({p}, {q}) are not coprime")]
    NonCoprime { p: i64, q: i64 },
    #[error("unexpected 2-bridge structure: {0}")]
    TwoBridgeStructure(String),
    #[error("exact and general pipelines disagree: {0}")]
    OracleMismatch(String),
    #[error("singular zero set near ({:.6}, {:.6}, {:.6}): {reason}", at[0], at[1], at[2])]
    SingularPoint { at: [f64; 3], reason: String },
    #[error("pillowcase lift jumps by {distance:.4} at sample {sample}; refine the continuation")]
    UnfoldJump { sample: usize, distance: f64 },
    #[error("ρ(c) leaves the plane of ρ(a), ρ(b) by {residual:.3e} at ({:.6}, {:.6}, {:.6})", at[0], at[1], at[2])]
    ProjectionDefect { at: [f64; 3], residual: f64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Floer(#[from] FloerError),
    #[error(transparent)]
    Maslov(#[from] MaslovError),
    #[error(transparent)]
    Pillow(#[from] PillowError),
}
