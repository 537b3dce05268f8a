#![allow(dead_code)]

pub mod props;

use pillowfloer::floer::GradedRanks;
use pillowfloer::knots::TorusSpec;

/// A torus-knot decomposition with its expected homology.
pub struct TorusFixture {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
    /// Amplitudes tried in order; the first that traces cleanly is used.
    pub regimes: &'static [(f64, f64)],
    pub homology: [usize; 4],
}

impl TorusFixture {
    pub fn spec(&self, eps_a: f64, eps_b: f64) -> TorusSpec {
        TorusSpec::new(self.p, self.q, self.r, self.s, eps_a, eps_b).unwrap()
    }

    pub fn ranks(&self) -> GradedRanks {
        GradedRanks(self.homology)
    }

    pub fn name(&self) -> String {
        format!("({},{},{},{})", self.p, self.q, self.r, self.s)
    }
}

const EPS_A_ONLY: &[(f64, f64)] = &[(0.01, 0.0)];

pub static TORUS_FIXTURES: [TorusFixture; 9] = [
    TorusFixture { p: 3, q: 7, r: 5, s: -2, regimes: EPS_A_ONLY, homology: [3, 2, 2, 2] },
    TorusFixture { p: 5, q: 7, r: 3, s: -2, regimes: EPS_A_ONLY, homology: [5, 4, 4, 4] },
    TorusFixture { p: 5, q: 12, r: 5, s: -2, regimes: EPS_A_ONLY, homology: [8, 7, 7, 7] },
    TorusFixture { p: 5, q: 17, r: 7, s: -2, regimes: EPS_A_ONLY, homology: [11, 10, 10, 10] },
    // With ε_B = 0 the line v = π/2, τ = 0 lies in the zero set for every
    // ε_A and crosses the other branches.
    TorusFixture { p: 3, q: 4, r: 3, s: -2, regimes: &[(0.01, 0.0), (0.01, 0.01)], homology: [2, 1, 1, 1] },
    TorusFixture { p: 3, q: 5, r: 2, s: -1, regimes: &[(0.01, 0.0), (0.01, 0.01)], homology: [2, 1, 2, 2] },
    TorusFixture { p: 4, q: 5, r: 4, s: -3, regimes: EPS_A_ONLY, homology: [2, 1, 2, 2] },
    TorusFixture { p: 4, q: 7, r: 2, s: -1, regimes: EPS_A_ONLY, homology: [3, 2, 3, 3] },
    TorusFixture { p: 5, q: 11, r: 9, s: -4, regimes: EPS_A_ONLY, homology: [5, 4, 4, 4] },
];

pub fn fixture(p: i64, q: i64) -> &'static TorusFixture {
    TORUS_FIXTURES.iter().find(|f| f.p == p && f.q == q).unwrap()
}

use pillowfloer::knots::{torus_knot_homology, KnotError, TorusOptions, TorusReport};
use pillowfloer::pillowcase::PerturbationFunction;

/// Runs the pipeline in the fixture's regimes until one succeeds. Returns
/// the amplitudes used and the outcome of every regime tried.
pub fn run_fixture(
    f: &TorusFixture,
    eps_a: Option<f64>,
    eps: f64,
    g_amp: f64,
) -> ((f64, f64), Result<TorusReport, KnotError>, Vec<String>) {
    let opts = TorusOptions { eps, g: PerturbationFunction::sine(g_amp), ..TorusOptions::default() };
    let mut notes = Vec::new();
    let mut last = None;
    for &(a, b) in f.regimes {
        let a = eps_a.unwrap_or(a);
        let b = if b == 0.0 { 0.0 } else { a.abs() };
        let out = torus_knot_homology(&f.spec(a, b), &opts);
        match out {
            Ok(r) => return ((a, b), Ok(r), notes),
            Err(e) => {
                notes.push(format!("ε_A={a}, ε_B={b}: {e}"));
                last = Some(((a, b), Err(e)));
            }
        }
    }
    let (ab, e) = last.unwrap();
    (ab, e, notes)
}
