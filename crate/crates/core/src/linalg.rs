//! Small fixed-size vectors and matrices.
//!
//! Everything here is plain value arithmetic on 2- and 3-component vectors and
//! 2×2 / 3×3 row-major matrices, plus the two solvers the isometry code needs:
//! a scale-aware 2×2 linear solve and the eigen-structure of a 3×3 rotation
//! matrix.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not a rotation (orthogonality or determinant check failed)")]
    NotARotation,
    #[error("matrix is the identity rotation; every direction is an eigenvector")]
    IdentityRotation,
}

/// Column vector `(x, y)^T` in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Vec2<T> {
    pub const fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product of the two vectors lifted to z = 0.
    pub fn perp_dot(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero()).then(|| self.scale(T::one() / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs())
    }

    pub fn to_array(self) -> [T; 2] {
        [self.x, self.y]
    }
}

impl<T: Real> From<[T; 2]> for Vec2<T> {
    fn from([x, y]: [T; 2]) -> Self {
        Self::new(x, y)
    }
}

impl<T: Real> Add for Vec2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Real> AddAssign for Vec2<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Real> Sub for Vec2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Real> Neg for Vec2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<T: Real> Mul<T> for Vec2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

/// Column vector `(x, y, z)^T`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn unit_x() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn unit_y() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn unit_z() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Right-handed cross product.
    pub fn cross(self, other: Self) -> Self {
        cross(self, other)
    }

    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero()).then(|| self.scale(T::one() / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// Outer product `self · otherᵀ`.
    pub fn outer(self, other: Self) -> Mat3<T> {
        let a = self.to_array();
        let b = other.to_array();
        Mat3::from_fn(|i, j| a[i] * b[j])
    }
}

impl<T: Real> From<[T; 3]> for Vec3<T> {
    fn from([x, y, z]: [T; 3]) -> Self {
        Self::new(x, y, z)
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
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
        self.scale(s)
    }
}

/// `X × Y = (x₂y₃ − x₃y₂, −x₁y₃ + x₃y₁, x₁y₂ − x₂y₁)ᵀ`.
pub fn cross<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    Vec3::new(
        a.y * b.z - a.z * b.y,
        -a.x * b.z + a.z * b.x,
        a.x * b.y - a.y * b.x,
    )
}

/// 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub rows: [[T; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub const fn new(rows: [[T; 2]; 2]) -> Self {
        Self { rows }
    }

    pub fn identity() -> Self {
        Self::new([[T::one(), T::zero()], [T::zero(), T::one()]])
    }

    /// Counterclockwise rotation by `angle` about the origin.
    pub fn rotation(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new([[c, -s], [s, c]])
    }

    pub fn det(&self) -> T {
        let [[a, b], [c, d]] = self.rows;
        a * d - b * c
    }

    pub fn mul_vec(&self, v: Vec2<T>) -> Vec2<T> {
        let [[a, b], [c, d]] = self.rows;
        Vec2::new(a * v.x + b * v.y, c * v.x + d * v.y)
    }

    pub fn mul_mat(&self, rhs: &Self) -> Self {
        let a = &self.rows;
        let b = &rhs.rows;
        let mut out = [[T::zero(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self::new(out)
    }

    pub fn sub_mat(&self, rhs: &Self) -> Self {
        let a = &self.rows;
        let b = &rhs.rows;
        Self::new([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }

    fn max_row_norm(&self) -> T {
        self.rows
            .iter()
            .map(|r| r[0].hypot(r[1]))
            .fold(T::zero(), T::max)
    }
}

/// Solves `m · x = b` by Cramer's rule.
///
/// The system is treated as singular when `|det| ≤ 1e-12 · r²`, with `r` the
/// largest row norm of `m`, so the test does not depend on the overall scale.
pub fn solve2<T: Real>(m: &Mat2<T>, b: Vec2<T>) -> Result<Vec2<T>, LinalgError> {
    let det = m.det();
    let r = m.max_row_norm();
    if det.is_nan() || det.abs() <= T::tol(1e-12) * r * r {
        return Err(LinalgError::SingularMatrix);
    }
    let [[a11, a12], [a21, a22]] = m.rows;
    let x = (b.x * a22 - a12 * b.y) / det;
    let y = (a11 * b.y - a21 * b.x) / det;
    Ok(Vec2::new(x, y))
}

/// 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3<T> {
    pub rows: [[T; 3]; 3],
}

impl<T: Real> Mat3<T> {
    pub const fn new(rows: [[T; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut rows = [[T::zero(); 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = f(i, j);
            }
        }
        Self::new(rows)
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Skew-symmetric matrix `[v]ₓ` with `[v]ₓ · w = v × w`.
    pub fn skew(v: Vec3<T>) -> Self {
        let z = T::zero();
        Self::new([[z, -v.z, v.y], [v.z, z, -v.x], [-v.y, v.x, z]])
    }

    pub fn row(&self, i: usize) -> Vec3<T> {
        Vec3::from(self.rows[i])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i])
    }

    pub fn trace(&self) -> T {
        self.rows[0][0] + self.rows[1][1] + self.rows[2][2]
    }

    pub fn det(&self) -> T {
        self.row(0).dot(cross(self.row(1), self.row(2)))
    }

    pub fn mul_vec(&self, v: Vec3<T>) -> Vec3<T> {
        Vec3::new(self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v))
    }

    pub fn mul_mat(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..3).fold(T::zero(), |acc, k| acc + self.rows[i][k] * rhs.rows[k][j])
        })
    }

    pub fn add_mat(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] + rhs.rows[i][j])
    }

    pub fn sub_mat(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] - rhs.rows[i][j])
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] * s)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.rows
            .iter()
            .flatten()
            .fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|v| v.is_finite())
    }

    /// `mᵀm ≈ I` and `det ≈ +1`, both within `tolerance`.
    pub fn is_rotation(&self, tolerance: T) -> bool {
        self.is_finite()
            && self
                .transpose()
                .mul_mat(self)
                .sub_mat(&Self::identity())
                .max_abs()
                <= tolerance
            && (self.det() - T::one()).abs() <= tolerance
    }
}

/// Eigen-structure of a 3×3 rotation matrix: the real eigenvalue with its unit
/// eigenvector and the conjugate pair `a ± b·i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eig3Result<T> {
    pub lambda_real: T,
    pub axis: Vec3<T>,
    /// `(a, b)` with `b ≥ 0`.
    pub complex_pair: (T, T),
}

/// Eigen-decomposition of a rotation matrix.
///
/// The real eigenvalue of a proper rotation is `+1`, so the eigenvector is
/// read off the null space of `M − I`: it is the largest of the three pairwise
/// cross products of the rows of `M − I`. The conjugate pair follows from the
/// trace, since `1 + 2a = tr(M)` and `a² + b² = det(M) = 1`.
///
/// The eigenvector is sign-normalized so its first component with magnitude
/// above `1e-9` is positive.
pub fn eig3_rotation<T: Real>(m: &Mat3<T>) -> Result<Eig3Result<T>, LinalgError> {
    if !m.is_rotation(T::tol(1e-8)) {
        return Err(LinalgError::NotARotation);
    }
    let shifted = m.sub_mat(&Mat3::identity());
    if shifted.max_abs() < T::tol(1e-9) {
        return Err(LinalgError::IdentityRotation);
    }

    let (r0, r1, r2) = (shifted.row(0), shifted.row(1), shifted.row(2));
    let axis = [cross(r0, r1), cross(r1, r2), cross(r2, r0)]
        .into_iter()
        .max_by(|a, b| {
            a.norm_squared()
                .partial_cmp(&b.norm_squared())
                .unwrap_or(Ordering::Equal)
        })
        .and_then(Vec3::normalized)
        .ok_or(LinalgError::NotARotation)?;
    let axis = canonical_sign(axis);

    let a = ((m.trace() - T::one()) / T::lit(2.0)).max(-T::one()).min(T::one());
    let b = (T::one() - a * a).max(T::zero()).sqrt();
    Ok(Eig3Result {
        lambda_real: T::one(),
        axis,
        complex_pair: (a, b),
    })
}

/// Flips `v` so its first component with magnitude above `1e-9` is positive.
pub fn canonical_sign<T: Real>(v: Vec3<T>) -> Vec3<T> {
    let threshold = T::tol(1e-9);
    match v.to_array().into_iter().find(|c| c.abs() > threshold) {
        Some(c) if c < T::zero() => -v,
        _ => v,
    }
}

#[cfg(test)]
// reference values are quoted to four digits
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type Vec3 = super::Vec3<f64>;

    fn rot_z(t: f64) -> Mat3<f64> {
        let (s, c) = t.sin_cos();
        Mat3::new([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    fn rot_y(t: f64) -> Mat3<f64> {
        let (s, c) = t.sin_cos();
        Mat3::new([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    }

    #[test]
    fn cross_basis_and_self() {
        let x = Vec3::new(1.0, 0.0, 0.0);
        let y = Vec3::new(0.0, 1.0, 0.0);
        assert_eq!(cross(x, y), Vec3::new(0.0, 0.0, 1.0));
        let v = Vec3::new(1.5, -2.0, 0.25);
        assert_eq!(cross(v, v), Vec3::zero());
    }

    #[test]
    fn cross_componentwise() {
        // x2y3 - x3y2 = 12 - 15, -(x1y3) + x3y1 = -6 + 12, x1y2 - x2y1 = 5 - 8
        let r = cross(Vec3::new(1.0, 2.0, 3.0), Vec3::new(4.0, 5.0, 6.0));
        assert_eq!(r, Vec3::new(-3.0, 6.0, -3.0));
    }

    #[test]
    fn solve2_identity_and_diagonal() {
        let x = solve2(&Mat2::identity(), Vec2::new(3.0, 4.0)).unwrap();
        assert_eq!(x, Vec2::new(3.0, 4.0));
        let m = Mat2::new([[2.0, 0.0], [0.0, 2.0]]);
        assert_eq!(solve2(&m, Vec2::new(2.0, 4.0)).unwrap(), Vec2::new(1.0, 2.0));
    }

    #[test]
    fn solve2_composite_pivot_system() {
        let m = Mat2::<f64>::new([[1.7071, 0.7071], [-0.7071, 1.7071]]);
        let x = solve2(&m, Vec2::new(1.4142, 0.0)).unwrap();
        assert!((x.x - 0.7071).abs() < 1e-4, "{x:?}");
        assert!((x.y - 0.2929).abs() < 1e-4, "{x:?}");
    }

    #[test]
    fn solve2_rejects_singular() {
        let m = Mat2::new([[1.0, 2.0], [2.0, 4.0]]);
        assert_eq!(solve2(&m, Vec2::new(1.0, 1.0)), Err(LinalgError::SingularMatrix));
        // scale invariance: a tiny but well-conditioned matrix is fine
        let tiny = Mat2::new([[1e-20, 0.0], [0.0, 1e-20]]);
        assert!(solve2(&tiny, Vec2::new(1e-20, 2e-20)).is_ok());
        let zero = Mat2::new([[0.0, 0.0], [0.0, 0.0]]);
        assert!(solve2(&zero, Vec2::zero()).is_err());
    }

    #[test]
    fn eig_of_z_rotation() {
        let e = eig3_rotation(&rot_z(PI / 6.0)).unwrap();
        assert_eq!(e.lambda_real, 1.0);
        assert!((e.axis - Vec3::unit_z()).max_abs() < 1e-12);
        assert!((e.complex_pair.0 - (PI / 6.0).cos()).abs() < 1e-12);
        assert!((e.complex_pair.1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn eig_of_composite_example() {
        let m = rot_y(PI / 4.0).mul_mat(&rot_z(PI / 6.0));
        let e = eig3_rotation(&m).unwrap();
        assert!((e.complex_pair.0 - 0.5927).abs() < 1e-3);
        assert!((e.complex_pair.1 - 0.8054).abs() < 1e-3);
        assert!((m.mul_vec(e.axis) - e.axis).max_abs() < 1e-12);
    }

    #[test]
    fn eig_identity_and_non_rotation() {
        assert_eq!(
            eig3_rotation(&Mat3::<f64>::identity()),
            Err(LinalgError::IdentityRotation)
        );
        let reflection = Mat3::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert_eq!(eig3_rotation(&reflection), Err(LinalgError::NotARotation));
        let shear = Mat3::new([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_eq!(eig3_rotation(&shear), Err(LinalgError::NotARotation));
    }

    #[test]
    fn eig_half_turn() {
        let m = Mat3::new([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
        let e = eig3_rotation(&m).unwrap();
        assert!((e.axis - Vec3::unit_x()).max_abs() < 1e-12);
        assert!((e.complex_pair.0 + 1.0).abs() < 1e-12);
        assert!(e.complex_pair.1.abs() < 1e-12);
    }

    #[test]
    fn canonical_sign_skips_tiny_components() {
        let v = canonical_sign(Vec3::new(1e-12, -0.6, 0.8));
        assert!(v.y > 0.0);
    }

    #[test]
    fn works_in_single_precision() {
        let m: Mat3<f32> = Mat3::new([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let e = eig3_rotation(&m).unwrap();
        assert!((e.axis.z - 1.0).abs() < 1e-6);
    }
}
