//! The pillowcase orbifold as ℝ² / (ℤ² ⋊ ℤ/2).
//!
//! Lifts live in the branched cover ℝ² with lattice `(πℤ)²` over the four
//! corners. The fundamental domain is `[0,π] × [0,2π]`.

mod arcs;
mod deck;
mod isotopy;
mod perturbation;
mod point;
mod scalar;

pub use arcs::{
    family_crossings, path_crossings, winding_number, winding_numbers, z_of_loop, z_of_loop_generic,
    z_of_loop_with, ArcFamily,
};
pub use deck::{canonicalize, canonicalize_with, DeckElement};
pub use isotopy::{isotopy_cg, pq_shear, shear};
pub use perturbation::{ParseSeriesError, PerturbationFunction};
pub use point::{LiftPoint, PillowPoint, LATTICE_TOL};
pub use scalar::{Coord, Rat};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PillowError {
    #[error("polyline is not transverse to the arc system near ({:.6}, {:.6})", at.gamma, at.theta)]
    NonTransverseCrossing { at: LiftPoint },
    #[error("polyline passes through a lattice point near ({:.6}, {:.6})", at.gamma, at.theta)]
    LatticeHit { at: LiftPoint },
    #[error("loop closure {closure} is not the identity")]
    NonClosedLoop { closure: DeckElement },
    #[error("path end misses closure image of its start by {gap:.3e}")]
    OpenPath { gap: f64 },
    #[error("({p}, {q}) are not coprime")]
    NonCoprime { p: i64, q: i64 },
}
