use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::point::{LiftPoint, PillowPoint, LATTICE_TOL};

/// An element of ℤ² ⋊ ℤ/2 acting on ℝ² by `x ↦ σx + 2π(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeckElement {
    pub m: i64,
    pub n: i64,
    pub sigma: i8,
}

impl DeckElement {
    pub const IDENTITY: DeckElement = DeckElement { m: 0, n: 0, sigma: 1 };

    /// Panics unless `sigma` is ±1.
    pub fn new(m: i64, n: i64, sigma: i8) -> DeckElement {
        assert!(sigma == 1 || sigma == -1, "sigma must be ±1, got {sigma}");
        DeckElement { m, n, sigma }
    }

    pub fn translation(m: i64, n: i64) -> DeckElement {
        DeckElement::new(m, n, 1)
    }

    /// The half-turn `x ↦ -x + 2π(m, n)`.
    pub fn rotation(m: i64, n: i64) -> DeckElement {
        DeckElement::new(m, n, -1)
    }

    pub fn is_identity(self) -> bool {
        self == DeckElement::IDENTITY
    }

    /// `self ∘ other`.
    pub fn compose(self, other: DeckElement) -> DeckElement {
        let s = self.sigma as i64;
        DeckElement::new(self.m + s * other.m, self.n + s * other.n, self.sigma * other.sigma)
    }

    pub fn inverse(self) -> DeckElement {
        let s = self.sigma as i64;
        DeckElement::new(-s * self.m, -s * self.n, self.sigma)
    }

    pub fn pow(self, k: i64) -> DeckElement {
        let base = if k < 0 { self.inverse() } else { self };
        let mut acc = DeckElement::IDENTITY;
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(base);
        }
        acc
    }

    pub fn apply(self, p: LiftPoint) -> LiftPoint {
        let s = self.sigma as f64;
        LiftPoint::new(s * p.gamma + TAU * self.m as f64, s * p.theta + TAU * self.n as f64)
    }

    /// Action on tangent vectors.
    pub fn apply_vector(self, v: LiftPoint) -> LiftPoint {
        v * self.sigma as f64
    }

    /// The element mapping `from` to `to`, if one does so within `tol`.
    pub fn relating(from: LiftPoint, to: LiftPoint, tol: f64) -> Option<DeckElement> {
        [1i8, -1]
            .into_iter()
            .filter_map(|sigma| {
                let s = sigma as f64;
                let m = ((to.gamma - s * from.gamma) / TAU).round() as i64;
                let n = ((to.theta - s * from.theta) / TAU).round() as i64;
                let g = DeckElement::new(m, n, sigma);
                let err = g.apply(from).dist(to);
                (err <= tol).then_some((err, g))
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map(|(_, g)| g)
    }

    /// The translate `g·x` closest to `near`, with `g`.
    pub fn nearest_translate(x: LiftPoint, near: LiftPoint) -> (DeckElement, LiftPoint) {
        let candidates = [1i8, -1].map(|sigma| {
            let s = sigma as f64;
            let m = ((near.gamma - s * x.gamma) / TAU).round() as i64;
            let n = ((near.theta - s * x.theta) / TAU).round() as i64;
            let g = DeckElement::new(m, n, sigma);
            (g, g.apply(x))
        });
        let d0 = candidates[0].1.dist(near);
        let d1 = candidates[1].1.dist(near);
        if d0 <= d1 {
            candidates[0]
        } else {
            candidates[1]
        }
    }
}

impl fmt::Display for DeckElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.n, if self.sigma > 0 { "+" } else { "-" })
    }
}

/// Folds a lift into the fundamental domain.
///
/// Returns `(x, g)` with `g·x = p`.
pub fn canonicalize(p: LiftPoint) -> (PillowPoint, DeckElement) {
    canonicalize_with(p, LATTICE_TOL)
}

pub fn canonicalize_with(p: LiftPoint, tol: f64) -> (PillowPoint, DeckElement) {
    let mut g = p.gamma.rem_euclid(TAU);
    let mut t = p.theta.rem_euclid(TAU);
    if g > PI {
        g = TAU - g;
        t = (TAU - t).rem_euclid(TAU);
    }
    if (TAU - t).abs() <= tol || t >= TAU {
        t = 0.0;
    }
    // The fold edges are identified by θ ↦ 2π - θ.
    if (g.abs() <= tol || (g - PI).abs() <= tol) && t > PI + tol {
        t = TAU - t;
    }
    let x = PillowPoint { gamma: g, theta: t };
    let deck = DeckElement::relating(x.lift(), p, 1e-6 * (1.0 + p.norm()))
        .expect("canonical representative lies in the deck orbit");
    (x, deck)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_elements() -> Vec<DeckElement> {
        let mut v = Vec::new();
        for m in -3..=3 {
            for n in -3..=3 {
                for s in [1, -1] {
                    v.push(DeckElement::new(m, n, s));
                }
            }
        }
        v
    }

    #[test]
    fn group_axioms_on_small_elements() {
        let els = small_elements();
        for &a in &els {
            assert_eq!(a.compose(DeckElement::IDENTITY), a);
            assert_eq!(DeckElement::IDENTITY.compose(a), a);
            assert!(a.compose(a.inverse()).is_identity());
            assert!(a.inverse().compose(a).is_identity());
        }
        for &a in els.iter().step_by(5) {
            for &b in els.iter().step_by(3) {
                for &c in els.iter().step_by(7) {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
    }

    #[test]
    fn composition_matches_action() {
        let x = LiftPoint::new(0.3, -1.7);
        for &a in small_elements().iter().step_by(3) {
            for &b in small_elements().iter().step_by(4) {
                let lhs = a.compose(b).apply(x);
                let rhs = a.apply(b.apply(x));
                assert!(lhs.dist(rhs) < 1e-12);
            }
        }
    }

    #[test]
    fn half_turns_are_involutions() {
        for &a in &small_elements() {
            if a.sigma == -1 {
                assert!(a.compose(a).is_identity());
            }
        }
    }

    #[test]
    fn canonical_examples() {
        let (x, g) = canonicalize(LiftPoint::new(PI / 2.0, PI / 2.0));
        assert!(x.approx_eq(PillowPoint { gamma: PI / 2.0, theta: PI / 2.0 }, 1e-12));
        assert!(g.is_identity());

        let (x, g) = canonicalize(LiftPoint::new(1.5 * PI, 1.5 * PI));
        assert!(x.approx_eq(PillowPoint { gamma: PI / 2.0, theta: PI / 2.0 }, 1e-12));
        assert_eq!(g, DeckElement::new(1, 1, -1));
    }

    #[test]
    fn canonical_example_against_exhaustive_search() {
        let p = LiftPoint::new(-PI / 4.0, 7.0 * PI / 4.0);
        let (x, g) = canonicalize(p);
        // Oracle: every element with |m|,|n| ≤ 2 whose inverse lands in the domain.
        let mut found = Vec::new();
        for m in -2..=2 {
            for n in -2..=2 {
                for s in [1, -1] {
                    let h = DeckElement::new(m, n, s);
                    let y = h.inverse().apply(p);
                    if (0.0..=PI).contains(&y.gamma) && (0.0..TAU).contains(&y.theta) {
                        found.push((h, y));
                    }
                }
            }
        }
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].0, g);
        assert!(found[0].1.dist(x.lift()) < 1e-12);
        assert!(x.approx_eq(PillowPoint { gamma: PI / 4.0, theta: PI / 4.0 }, 1e-12));
        assert_eq!(g, DeckElement::new(0, 1, -1));
    }

    #[test]
    fn canonicalize_is_idempotent_on_fold_edges() {
        for t in [0.1, 1.0, 3.0, 4.0, 6.0] {
            for gam in [0.0, PI] {
                let (x, _) = canonicalize(LiftPoint::new(gam, t));
                let (y, g) = canonicalize(x.lift());
                assert!(x.approx_eq(y, 1e-12));
                assert!(g.is_identity() || g.apply(y.lift()).dist(x.lift()) < 1e-9);
                assert!(x.theta <= PI + 1e-9);
            }
        }
    }
}
