use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A finite sine series `g(x) = Σ a_k sin(kx)`.
///
/// Odd, 2π-periodic and vanishing at π by construction.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PerturbationFunction {
    /// `(k, a_k)` pairs with `k ≥ 1`.
    pub terms: Vec<(u32, f64)>,
}

impl PerturbationFunction {
    pub fn zero() -> PerturbationFunction {
        PerturbationFunction::default()
    }

    /// `amp · sin(x)`.
    pub fn sine(amp: f64) -> PerturbationFunction {
        PerturbationFunction { terms: vec![(1, amp)] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|&(_, a)| a == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(k, a)| a * (k as f64 * x).sin()).sum()
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(k, a)| a * k as f64 * (k as f64 * x).cos()).sum()
    }

    pub fn scaled(&self, s: f64) -> PerturbationFunction {
        PerturbationFunction { terms: self.terms.iter().map(|&(k, a)| (k, s * a)).collect() }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("bad sine series `{0}`: expected comma-separated `k:amp` with k ≥ 1")]
pub struct ParseSeriesError(pub String);

impl FromStr for PerturbationFunction {
    type Err = ParseSeriesError;

    /// Parses `"k:amp,k:amp"`; the empty string is the zero series.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSeriesError(s.to_string());
        let mut terms = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, a) = part.split_once(':').ok_or_else(err)?;
            let k: u32 = k.trim().parse().map_err(|_| err())?;
            let a: f64 = a.trim().parse().map_err(|_| err())?;
            if k == 0 || !a.is_finite() {
                return Err(err());
            }
            terms.push((k, a));
        }
        Ok(PerturbationFunction { terms })
    }
}

impl fmt::Display for PerturbationFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(k, a)| format!("{k}:{a}")).collect();
        write!(f, "{}", parts.join(","))
    }
}
