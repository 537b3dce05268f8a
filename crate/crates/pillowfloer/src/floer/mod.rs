//! Bigons, the 𝔽₂ differential and ℤ/4-graded homology of `C(L0, L1)`.

mod bigons;
mod complex;
mod f2;

pub use bigons::{find_bigons, BigonCertificate, InteriorClass, SearchLimits};
pub use complex::{
    build_complex, canonical_generator, chain_ranks, check_admissible, homology, vertically_monotonic_fastpath,
    ChainComplexZ4, ComplexComponent, ComplexOptions, GradedRanks, HomologyReport,
};
pub use f2::F2Matrix;

use crate::curves::CurveError;
use crate::maslov::MaslovError;
use crate::pillowcase::PillowError;
use crate::Z4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FloerError {
    #[error("curve `{label}` is not restricted: {reason}")]
    NotRestricted { label: String, reason: String },
    #[error("pair with `{label}` is not admissible: {reason}")]
    NotAdmissible { label: String, reason: String },
    #[error("bigon {from} → {to} reaches beyond the {window}-period window; rerun with a larger window")]
    WindowExhausted { from: usize, to: usize, window: f64 },
    #[error("∂² ≠ 0 on component {component}: nonzero compositions {compositions:?}")]
    DifferentialNotSquareZero { component: usize, compositions: Vec<(usize, usize)> },
    #[error("bigon {from} → {to} on component {component} changes grading by {drop}, not 1")]
    GradingViolation { component: usize, from: usize, to: usize, drop: Z4 },
    #[error("curve `{label}` is not vertically monotonic")]
    NotMonotonic { label: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Maslov(#[from] MaslovError),
    #[error(transparent)]
    Pillow(#[from] PillowError),
}
