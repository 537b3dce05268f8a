use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::KnotError;

/// The 2-bridge knot whose double branched cover is the lens space `L(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoBridgeSpec {
    pub p: i64,
    pub q: i64,
}

impl TwoBridgeSpec {
    pub fn new(p: i64, q: i64) -> Result<TwoBridgeSpec, KnotError> {
        if p <= 0 || p % 2 == 0 {
            return Err(KnotError::InvalidSpec(format!("p = {p} must be odd and positive")));
        }
        if p.gcd(&q) != 1 {
            return Err(KnotError::InvalidSpec(format!("gcd({p}, {q}) ≠ 1")));
        }
        Ok(TwoBridgeSpec { p, q })
    }

    /// Slope `(q - p) / q` of the arc in the cover.
    pub fn slope(&self) -> f64 {
        (self.q - self.p) as f64 / self.q as f64
    }
}

/// A torus knot `T(p, q)` with the tangle decomposition fixed by `pr + qs = 1`
/// and holonomy perturbation amplitudes on the two surgery cores.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusSpec {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
    pub eps_a: f64,
    pub eps_b: f64,
}

/// Default perturbation amplitudes `(ε_A, ε_B)`.
pub const DEFAULT_EPS_A: f64 = 0.01;
pub const DEFAULT_EPS_B: f64 = 0.0;

impl TorusSpec {
    pub fn new(p: i64, q: i64, r: i64, s: i64, eps_a: f64, eps_b: f64) -> Result<TorusSpec, KnotError> {
        if p * r + q * s != 1 {
            return Err(KnotError::InvalidSpec(format!("{p}·{r} + {q}·{s} ≠ 1")));
        }
        if !eps_a.is_finite() || !eps_b.is_finite() {
            return Err(KnotError::InvalidSpec("perturbation amplitudes must be finite".into()));
        }
        Ok(TorusSpec { p, q, r, s, eps_a, eps_b })
    }

    pub fn with_eps(self, eps_a: f64, eps_b: f64) -> TorusSpec {
        TorusSpec { eps_a, eps_b, ..self }
    }
}
