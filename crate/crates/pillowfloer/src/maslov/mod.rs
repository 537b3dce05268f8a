//! Maslov indices against constant line fields, the triple index, polygon
//! indices and the relative ℤ/4 grading.

mod grading;
mod index;

pub use grading::{
    anchor_absolute, connecting_loop, connecting_loop_with, corner_index, loop_maslov_terms, relative_grading,
    relative_grading_along, Anchor, AnchorSource, ComponentGrading, ConnectingLoop, GradingAssignment,
};
pub use index::{
    loop_maslov, mas_ngon, mas_polygon, path_maslov, polyline_maslov, triple_index, CurvePath, LineSlope, DELTA,
};

use crate::pillowcase::PillowError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MaslovError {
    #[error("turning angle {angle:.4} rad is not below π/2")]
    NonGenericVertex { angle: f64 },
    #[error("tangent lines coincide ({l0:.6}, {l1:.6})")]
    EqualLines { l0: f64, l1: f64 },
    #[error("polygon sides do not chain at corner {corner}")]
    ChainMismatch { corner: usize },
    #[error("generators lie on different components ({a} and {b})")]
    DifferentComponents { a: usize, b: usize },
    #[error("no generator {generator} in component {component}")]
    UnknownGenerator { component: usize, generator: usize },
    #[error(transparent)]
    Pillow(#[from] PillowError),
}
