use std::ops::Mul;

use nalgebra::{Quaternion as NaQuaternion, Vector3};

/// A quaternion `w + xi + yj + zk`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion(pub NaQuaternion<f64>);

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion(NaQuaternion::from_vector(nalgebra::Vector4::new(x, y, z, w)))
    }

    /// `e^{angle · axis}` for a unit pure quaternion `axis`.
    pub fn exp(angle: f64, axis: Vector3<f64>) -> Quaternion {
        let v = axis * angle.sin();
        Quaternion::new(angle.cos(), v.x, v.y, v.z)
    }

    pub fn pure(v: Vector3<f64>) -> Quaternion {
        Quaternion::new(0.0, v.x, v.y, v.z)
    }

    pub fn re(&self) -> f64 {
        self.0.w
    }

    pub fn vector(&self) -> Vector3<f64> {
        self.0.imag()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn conjugate(&self) -> Quaternion {
        Quaternion(self.0.conjugate())
    }

    /// Inverse of a unit quaternion.
    pub fn unit_inverse(&self) -> Quaternion {
        self.conjugate()
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Unit with vanishing real part.
    pub fn is_traceless(&self, tol: f64) -> bool {
        self.is_unit(tol) && self.re().abs() <= tol
    }

    pub fn dist(&self, o: &Quaternion) -> f64 {
        (self.0 - o.0).norm()
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion(self.0 * o.0)
    }
}
