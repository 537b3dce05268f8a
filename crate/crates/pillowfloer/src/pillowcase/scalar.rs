use std::f64::consts::PI;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::Zero;

/// Rationals used for exact coordinates, measured in units of π.
pub type Rat = Ratio<i128>;

/// Coordinate field for the crossing counters.
///
/// `f64` coordinates are radians; [`Rat`] coordinates are multiples of π and
/// compared exactly.
pub trait Coord:
    Copy
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;
    /// The value of π in this coordinate unit.
    fn half_turn() -> Self;
    fn floor_int(self) -> i64;
    fn within(self, tol: f64) -> bool;
    fn to_f64(self) -> f64;

    fn zero() -> Self {
        Self::from_int(0)
    }

    fn signum_int(self) -> i64 {
        let z = Self::zero();
        if self > z {
            1
        } else if self < z {
            -1
        } else {
            0
        }
    }
}

impl Coord for f64 {
    fn from_int(n: i64) -> f64 {
        n as f64
    }
    fn half_turn() -> f64 {
        PI
    }
    fn floor_int(self) -> i64 {
        self.floor() as i64
    }
    fn within(self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn to_f64(self) -> f64 {
        self
    }
}

impl Coord for Rat {
    fn from_int(n: i64) -> Rat {
        Rat::from_integer(n as i128)
    }
    fn half_turn() -> Rat {
        Rat::from_integer(1)
    }
    fn floor_int(self) -> i64 {
        self.floor().to_integer() as i64
    }
    fn within(self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64 * PI
    }
}
