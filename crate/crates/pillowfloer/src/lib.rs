//! Relatively ℤ/4-graded Lagrangian Floer homology of immersed curves in the
//! pillowcase, and the curves coming from 2-bridge and torus knots.

pub mod curves;
pub mod floer;
pub mod knots;
pub mod maslov;
pub mod pillowcase;
pub mod z4;

pub use z4::Z4;
