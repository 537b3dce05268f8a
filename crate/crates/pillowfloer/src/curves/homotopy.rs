use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::curve::LiftedCurve;
use super::CurveError;

/// Free homotopy class of a loop in the punctured pillowcase, as a
/// cyclically reduced word in the free group on three letters.
///
/// The letters record crossings with a path through the four corners: the
/// edge `γ = 0` (letter 1), the edge `θ = π` (letter 2) and the edge `γ = π`
/// (letter 3). Cutting along that path leaves a disk, so these crossings
/// give a free basis. A negative letter is an inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicWord(pub Vec<i8>);

impl CyclicWord {
    /// Freely and cyclically reduces a word.
    pub fn reduced(letters: &[i8]) -> CyclicWord {
        let mut w: Vec<i8> = Vec::with_capacity(letters.len());
        for &x in letters {
            if w.last() == Some(&-x) {
                w.pop();
            } else {
                w.push(x);
            }
        }
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w[lo] == -w[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        CyclicWord(w[lo..hi].to_vec())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord(self.0.iter().rev().map(|&x| -x).collect())
    }

    /// The shortest word whose power this is.
    pub fn root(&self) -> CyclicWord {
        let n = self.0.len();
        (1..=n)
            .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| self.0[i] == self.0[i % d]))
            .map(|d| CyclicWord(self.0[..d].to_vec()))
            .unwrap_or_else(|| self.clone())
    }

    /// Equal up to cyclic rotation.
    pub fn is_rotation_of(&self, o: &CyclicWord) -> bool {
        let n = self.0.len();
        n == o.0.len() && (n == 0 || (0..n).any(|r| (0..n).all(|i| self.0[(i + r) % n] == o.0[i])))
    }

    /// Whether some nonzero powers of the two loops are freely homotopic.
    pub fn shares_power_with(&self, o: &CyclicWord) -> bool {
        if self.is_trivial() || o.is_trivial() {
            return false;
        }
        let (a, b) = (self.root(), o.root());
        a.is_rotation_of(&b) || a.is_rotation_of(&b.inverse())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &x in &self.0 {
            let c = ['a', 'b', 'c'][(x.unsigned_abs() - 1) as usize];
            if x > 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{}", c.to_ascii_uppercase())?;
            }
        }
        Ok(())
    }
}

/// `(-1)^m` for the strip `(mπ, (m+1)π)` containing `x`.
fn strip_sign(x: f64) -> i8 {
    if (x / PI).floor().rem_euclid(2.0) == 0.0 {
        1
    } else {
        -1
    }
}

/// Letters for the crossings of the segment `a → b` with the lifted cuts,
/// in order along the segment.
///
/// The cuts lift to the lines `γ ∈ πℤ` and `θ ∈ π + 2πℤ`. A rotation of
/// the cover flips both the crossing direction and the strip parity, so the
/// letter `sign · parity` is well defined in the quotient.
fn segment_letters(a: (f64, f64), b: (f64, f64), out: &mut Vec<i8>) {
    let mut hits: Vec<(f64, i8)> = Vec::new();
    let (ga, gb) = (a.0 / PI, b.0 / PI);
    let (lo, hi) = (ga.min(gb), ga.max(gb));
    let dir_g: i8 = if gb > ga { 1 } else { -1 };
    let mut k = lo.floor() + 1.0;
    while k <= hi {
        if k > lo {
            let t = (k - ga) / (gb - ga);
            let theta = a.1 + t * (b.1 - a.1);
            let letter: i8 = if (k as i64).rem_euclid(2) == 0 { 1 } else { 3 };
            hits.push((t, letter * dir_g * strip_sign(theta)));
        }
        k += 1.0;
    }
    // θ = π + 2πk  ⇔  (θ - π) / 2π ∈ ℤ.
    let (ta, tb) = ((a.1 - PI) / (2.0 * PI), (b.1 - PI) / (2.0 * PI));
    let (lo, hi) = (ta.min(tb), ta.max(tb));
    let dir_t: i8 = if tb > ta { 1 } else { -1 };
    let mut k = lo.floor() + 1.0;
    while k <= hi {
        if k > lo {
            let t = (k - ta) / (tb - ta);
            let gamma = a.0 + t * (b.0 - a.0);
            hits.push((t, 2 * dir_t * strip_sign(gamma)));
        }
        k += 1.0;
    }
    hits.sort_by(|x, y| x.0.total_cmp(&y.0));
    out.extend(hits.into_iter().map(|(_, l)| l));
}

/// The free homotopy class of a circle in the punctured pillowcase.
pub fn cyclic_word(c: &LiftedCurve) -> Result<CyclicWord, CurveError> {
    if !c.is_circle() {
        return Err(CurveError::NotACircle { label: c.label.clone() });
    }
    let mut letters = Vec::new();
    for i in 0..c.segment_count() as i64 {
        let (a, b) = c.segment(i);
        segment_letters((a.gamma, a.theta), (b.gamma, b.theta), &mut letters);
    }
    Ok(CyclicWord::reduced(&letters))
}
