//! Integers mod 4.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of ℤ/4, stored as its representative in `0..4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "i64", into = "i64")]
pub struct Z4(u8);

impl Z4 {
    pub const ZERO: Z4 = Z4(0);
    pub const ONE: Z4 = Z4(1);

    pub fn new(n: i64) -> Z4 {
        Z4(n.rem_euclid(4) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<i64> for Z4 {
    fn from(n: i64) -> Z4 {
        Z4::new(n)
    }
}

impl From<Z4> for i64 {
    fn from(z: Z4) -> i64 {
        z.0 as i64
    }
}

impl Add for Z4 {
    type Output = Z4;
    fn add(self, rhs: Z4) -> Z4 {
        Z4((self.0 + rhs.0) % 4)
    }
}

impl AddAssign for Z4 {
    fn add_assign(&mut self, rhs: Z4) {
        *self = *self + rhs;
    }
}

impl Sub for Z4 {
    type Output = Z4;
    fn sub(self, rhs: Z4) -> Z4 {
        Z4((self.0 + 4 - rhs.0) % 4)
    }
}

impl Neg for Z4 {
    type Output = Z4;
    fn neg(self) -> Z4 {
        Z4((4 - self.0) % 4)
    }
}

impl fmt::Display for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
