//! Scalar abstraction shared by every geometric type in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal must be representable")
    }

    /// Converts a tolerance stated for `f64` arithmetic into one usable at
    /// this precision. Tolerances never drop below 64 ulps of 1.
    fn tol(x: f64) -> Self {
        Self::lit(x).max(Self::epsilon() * Self::lit(64.0))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Wraps an angle into `(-pi, pi]`.
pub fn normalize_angle<T: Real>(angle: T) -> T {
    let two_pi = T::TAU();
    let mut a = angle % two_pi;
    if a > T::PI() {
        a = a - two_pi;
    } else if a <= -T::PI() {
        a = a + two_pi;
    }
    a
}

/// Smallest absolute difference between two angles modulo `2 pi`.
pub fn angle_distance<T: Real>(a: T, b: T) -> T {
    normalize_angle(a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn normalize_keeps_half_open_range() {
        assert_eq!(normalize_angle(PI), PI);
        assert!((normalize_angle(-PI) - PI).abs() < 1e-15);
        assert!((normalize_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((normalize_angle(2.5 * PI) - 0.5 * PI).abs() < 1e-12);
        assert!((normalize_angle(-0.5 * PI) + 0.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn angle_distance_wraps() {
        assert!(angle_distance(PI - 1e-3, -PI + 1e-3) < 2.1e-3);
        assert!(angle_distance(0.0, 2.0 * PI) < 1e-15);
    }

    #[test]
    fn f32_tolerances_are_floored() {
        assert_eq!(<f64 as Real>::tol(1e-9), 1e-9);
        assert!(<f32 as Real>::tol(1e-12) > 1e-6);
    }
}
