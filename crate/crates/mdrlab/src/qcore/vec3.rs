use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Real 3-vector fixing a spin observable axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn x_axis() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn y_axis() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn z_axis() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn dot(self, rhs: Self) -> T {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Self) -> Self {
        Self::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// True when the norm is 1 within the validation tolerance.
    pub fn is_unit(self) -> bool {
        (self.norm() - T::one()).abs() <= T::validation_tol()
    }

    /// Rescales to unit length; fails on (near-)zero input.
    pub fn normalized(self) -> Result<Self> {
        let n = self.norm();
        if n <= T::axis_tol() {
            return Err(Error::ZeroNorm);
        }
        Ok(self * n.recip())
    }

    /// Errors unless the vector is unit length within the validation tolerance.
    pub fn require_unit(self) -> Result<Self> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        if !self.is_unit() {
            return Err(Error::NotUnit {
                norm: self.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self)
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}
