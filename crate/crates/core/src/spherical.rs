//! Rotations of the unit sphere.
//!
//! Orientation-preserving isometries of S² are exactly the rotations about an
//! axis through the origin. A rotation is stored in axis-angle form with the
//! angle in `[0, π]`; a rotation by `−θ` about `P` is kept as `+θ` about `−P`.
//!
//! Axis recovery from a pair of point correspondences `X → X'`, `Y → Y'` has
//! two routes. The cross-product route takes `(X − X') × (Y − Y')`. The
//! bisector route intersects the two great circles of points equidistant from
//! `X, X'` and from `Y, Y'`. The routes fail in the same configurations and are
//! cross-checked against each other in the tests.

use std::ops::Neg;

use thiserror::Error;

use crate::linalg::{canonical_sign, cross, eig3_rotation, Eig3Result, LinalgError, Mat3, Vec3};
use crate::scalar::{normalize_angle, Real};

/// Inputs within this distance of unit length are renormalized.
pub const UNIT_RENORMALIZE_TOLERANCE: f64 = 1e-6;

/// Absolute tolerance on the equal-angular-length precondition, in radians.
pub const ISOMETRY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SphereError {
    #[error("vector has length {0}, too far from 1 to renormalize")]
    NotUnit(f64),
    #[error("rotation axis is undetermined by this correspondence; choose a different second point")]
    DegenerateAxis,
    #[error("correspondence does not preserve angular distance ({src} vs {dst} rad)")]
    NotIsometric { src: f64, dst: f64 },
    #[error("point lies on the rotation axis; its image carries no angle information")]
    PointOnAxis,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("points are antipodal")]
    AntipodalPoints,
    #[error("great circles coincide")]
    IdenticalCircles,
    #[error("every point is fixed; the correspondence is the identity")]
    IdentityCorrespondence,
    #[error("matrix is not a rotation")]
    NotARotation,
    #[error(transparent)]
    Linalg(LinalgError),
}

impl From<LinalgError> for SphereError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NotARotation => SphereError::NotARotation,
            other => SphereError::Linalg(other),
        }
    }
}

/// Point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3<T>(Vec3<T>);

impl<T: Real> UnitVector3<T> {
    /// Accepts `v` if its length is within `1e-6` of 1 and renormalizes it.
    pub fn new(v: Vec3<T>) -> Result<Self, SphereError> {
        let n = v.norm();
        if !v.is_finite() || (n - T::one()).abs() > T::tol(UNIT_RENORMALIZE_TOLERANCE) {
            return Err(SphereError::NotUnit(n.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self(v.scale(T::one() / n)))
    }

    /// Direction of any non-zero finite vector.
    pub fn normalize(v: Vec3<T>) -> Option<Self> {
        v.normalized().filter(|u| u.is_finite()).map(Self)
    }

    pub fn x() -> Self {
        Self(Vec3::unit_x())
    }

    pub fn y() -> Self {
        Self(Vec3::unit_y())
    }

    pub fn z() -> Self {
        Self(Vec3::unit_z())
    }

    pub fn vec(&self) -> Vec3<T> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0.dot(other.0)
    }

    /// Great-circle distance in radians.
    pub fn angular_distance(&self, other: &Self) -> T {
        angular_distance(self.0, other.0)
    }
}

impl<T: Real> Neg for UnitVector3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

/// Angle between two vectors, accurate near 0 and π.
pub fn angular_distance<T: Real>(a: Vec3<T>, b: Vec3<T>) -> T {
    cross(a, b).norm().atan2(a.dot(b))
}

/// Rotation by `angle ∈ [0, π]` about `axis` (right-hand rule).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3<T> {
    axis: UnitVector3<T>,
    angle: T,
}

impl<T: Real> Rotation3<T> {
    /// Normalizes any signed angle into `[0, π]`, absorbing the sign into the
    /// axis. Half turns get the canonical axis sign (first significant
    /// component positive).
    pub fn new(axis: UnitVector3<T>, angle: T) -> Self {
        let mut angle = normalize_angle(angle);
        let mut axis = axis;
        if angle < T::zero() {
            angle = -angle;
            axis = -axis;
        }
        if T::PI() - angle <= T::tol(1e-12) {
            axis = UnitVector3(canonical_sign(axis.0));
        }
        Self { axis, angle }
    }

    pub fn identity() -> Self {
        Self {
            axis: UnitVector3::z(),
            angle: T::zero(),
        }
    }

    pub fn axis(&self) -> UnitVector3<T> {
        self.axis
    }

    pub fn angle(&self) -> T {
        self.angle
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.axis, self.angle)
    }

    pub fn matrix(&self) -> RotationMatrix3<T> {
        rotation_matrix(self)
    }

    pub fn apply(&self, p: UnitVector3<T>) -> UnitVector3<T> {
        apply_sphere(self, p)
    }

    /// Rodrigues rotation of an arbitrary vector.
    pub fn apply_vec(&self, v: Vec3<T>) -> Vec3<T> {
        let k = self.axis.0;
        let (s, c) = self.angle.sin_cos();
        v.scale(c) + cross(k, v).scale(s) + k.scale(k.dot(v) * (T::one() - c))
    }

    /// Equality as maps of the sphere: matrices agree entrywise within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.matrix().m.sub_mat(&other.matrix().m).max_abs() <= tol
    }
}

/// Orthogonal 3×3 matrix with determinant +1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix3<T> {
    m: Mat3<T>,
}

impl<T: Real> RotationMatrix3<T> {
    /// Validates `mᵀm = I` and `det m = 1` within `1e-9`.
    pub fn new(m: Mat3<T>) -> Result<Self, SphereError> {
        if m.is_rotation(T::tol(1e-9)) {
            Ok(Self { m })
        } else {
            Err(SphereError::NotARotation)
        }
    }

    pub fn mat(&self) -> &Mat3<T> {
        &self.m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            m: self.m.mul_mat(&rhs.m),
        }
    }

    pub fn apply(&self, v: Vec3<T>) -> Vec3<T> {
        self.m.mul_vec(v)
    }
}

/// Great circle: the sphere's intersection with the plane through the origin
/// orthogonal to `normal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCircle<T> {
    pub normal: UnitVector3<T>,
}

impl<T: Real> GreatCircle<T> {
    pub fn new(normal: UnitVector3<T>) -> Self {
        Self { normal }
    }

    /// Great circle through two distinct, non-antipodal points.
    pub fn through(a: &UnitVector3<T>, b: &UnitVector3<T>) -> Option<Self> {
        UnitVector3::normalize(cross(a.0, b.0)).map(Self::new)
    }

    /// Orthonormal basis `(u, w)` of the circle's plane with `u × w = normal`.
    pub fn basis(&self) -> (Vec3<T>, Vec3<T>) {
        let n = self.normal.0;
        let helper = if n.x.abs() < T::lit(0.9) {
            Vec3::unit_x()
        } else {
            Vec3::unit_y()
        };
        let u = cross(n, helper).normalized().expect("helper not parallel to normal");
        let w = cross(n, u);
        (u, w)
    }

    /// Point at parameter `t` (radians) along the circle.
    pub fn point_at(&self, t: T) -> UnitVector3<T> {
        let (u, w) = self.basis();
        let (s, c) = t.sin_cos();
        UnitVector3(u.scale(c) + w.scale(s))
    }

    /// `n` evenly spaced points around the circle.
    pub fn sample(&self, n: usize) -> Vec<UnitVector3<T>> {
        let step = T::TAU() / T::from_usize(n.max(1)).unwrap_or(T::one());
        (0..n)
            .map(|i| self.point_at(step * T::from_usize(i).unwrap_or(T::zero())))
            .collect()
    }
}

/// Pair of distinct, non-antipodal points on the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSegment<T> {
    a: UnitVector3<T>,
    b: UnitVector3<T>,
}

impl<T: Real> SphereSegment<T> {
    pub fn new(a: UnitVector3<T>, b: UnitVector3<T>) -> Result<Self, SphereError> {
        let tol = T::tol(1e-9);
        if (a.0 - b.0).norm() <= tol {
            return Err(SphereError::CoincidentPoints);
        }
        if (a.0 + b.0).norm() <= tol {
            return Err(SphereError::AntipodalPoints);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> UnitVector3<T> {
        self.a
    }

    pub fn b(&self) -> UnitVector3<T> {
        self.b
    }

    /// Angular length.
    pub fn length(&self) -> T {
        self.a.angular_distance(&self.b)
    }

    pub fn great_circle(&self) -> GreatCircle<T> {
        GreatCircle::through(&self.a, &self.b).expect("segment endpoints are independent")
    }
}

/// `M = cos θ·I + sin θ·[k]ₓ + (1 − cos θ)·k kᵀ`.
pub fn rotation_matrix<T: Real>(rot: &Rotation3<T>) -> RotationMatrix3<T> {
    let k = rot.axis.0;
    let (s, c) = rot.angle.sin_cos();
    let m = Mat3::identity()
        .scale(c)
        .add_mat(&Mat3::skew(k).scale(s))
        .add_mat(&k.outer(k).scale(T::one() - c));
    RotationMatrix3 { m }
}

pub fn apply_sphere<T: Real>(rot: &Rotation3<T>, p: UnitVector3<T>) -> UnitVector3<T> {
    UnitVector3(rot.apply_vec(p.0))
}

fn check_isometric<T: Real>(
    x: &UnitVector3<T>,
    xp: &UnitVector3<T>,
    y: &UnitVector3<T>,
    yp: &UnitVector3<T>,
) -> Result<(), SphereError> {
    let src = x.angular_distance(y);
    let dst = xp.angular_distance(yp);
    if (src - dst).abs() > T::tol(ISOMETRY_TOLERANCE) {
        return Err(SphereError::NotIsometric {
            src: src.to_f64().unwrap_or(f64::NAN),
            dst: dst.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Axis `U / |U|` with `U = (X − X') × (Y − Y')`.
///
/// Both chords are normal to their bisector planes, so `U` runs along the
/// planes' common line, which is the rotation axis.
pub fn recover_axis_cross<T: Real>(
    x: UnitVector3<T>,
    xp: UnitVector3<T>,
    y: UnitVector3<T>,
    yp: UnitVector3<T>,
) -> Result<UnitVector3<T>, SphereError> {
    check_isometric(&x, &xp, &y, &yp)?;
    let u = cross(x.0 - xp.0, y.0 - yp.0);
    if u.norm() < T::tol(1e-12) {
        return Err(SphereError::DegenerateAxis);
    }
    UnitVector3::normalize(u).ok_or(SphereError::DegenerateAxis)
}

/// Signed rotation angle about `axis` carrying `x` to `xp`, in `(−π, π]`.
///
/// Both points are projected onto the plane orthogonal to the axis and the
/// angle between the projections is measured with `atan2`, so it is valid for
/// points at any latitude and for half turns.
pub fn rotation_angle_about_axis<T: Real>(
    axis: UnitVector3<T>,
    x: UnitVector3<T>,
    xp: UnitVector3<T>,
) -> Result<T, SphereError> {
    let p = axis.0;
    let u = x.0 - p.scale(x.0.dot(p));
    let up = xp.0 - p.scale(xp.0.dot(p));
    let tol = T::tol(1e-9);
    if u.norm() < tol || up.norm() < tol {
        return Err(SphereError::PointOnAxis);
    }
    Ok(p.dot(cross(u, up)).atan2(u.dot(up)))
}

/// `arcsin(|X × X'| / (|X|·|X'|))`: the chordal angle between `x` and `xp`.
///
/// This equals the rotation angle only for points on the rotation's equator
/// and angles up to π/2; a half turn of an equatorial point yields 0. Kept for
/// comparison with [`rotation_angle_about_axis`].
pub fn chord_arcsin_angle<T: Real>(x: UnitVector3<T>, xp: UnitVector3<T>) -> T {
    let v = cross(x.0, xp.0);
    (v.norm() / (x.0.norm() * xp.0.norm())).min(T::one()).asin()
}

/// Great circle of points equidistant from `a` and `b`; its normal is along
/// the chord `a − b`.
pub fn bisector_great_circle<T: Real>(
    a: UnitVector3<T>,
    b: UnitVector3<T>,
) -> Result<GreatCircle<T>, SphereError> {
    let tol = T::tol(1e-12);
    if (a.0 - b.0).norm() <= tol {
        return Err(SphereError::CoincidentPoints);
    }
    if (a.0 + b.0).norm() <= tol {
        return Err(SphereError::AntipodalPoints);
    }
    let normal = UnitVector3::normalize(a.0 - b.0).ok_or(SphereError::CoincidentPoints)?;
    Ok(GreatCircle::new(normal))
}

/// The antipodal pair `(P, −P)` where two great circles meet.
pub fn intersect_great_circles<T: Real>(
    c1: &GreatCircle<T>,
    c2: &GreatCircle<T>,
) -> Result<(UnitVector3<T>, UnitVector3<T>), SphereError> {
    let n = cross(c1.normal.0, c2.normal.0);
    if n.norm() < T::tol(1e-12) {
        return Err(SphereError::IdenticalCircles);
    }
    let p = UnitVector3::normalize(n).ok_or(SphereError::IdenticalCircles)?;
    Ok((p, -p))
}

/// Axis as the intersection of the bisector circles of `XX'` and `YY'`.
pub fn recover_axis_geometric<T: Real>(
    x: UnitVector3<T>,
    xp: UnitVector3<T>,
    y: UnitVector3<T>,
    yp: UnitVector3<T>,
) -> Result<UnitVector3<T>, SphereError> {
    check_isometric(&x, &xp, &y, &yp)?;
    let lx = bisector_great_circle(x, xp)?;
    let ly = bisector_great_circle(y, yp)?;
    match intersect_great_circles(&lx, &ly) {
        Ok((p, _)) => Ok(p),
        Err(SphereError::IdenticalCircles) => Err(SphereError::DegenerateAxis),
        Err(e) => Err(e),
    }
}

/// Which construction locates the axis in [`recover_sphere_rotation_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisMethod {
    /// Chord cross product, falling back to the bisector circles when the
    /// product vanishes.
    CrossProduct,
    /// Intersection of the two bisector great circles.
    Bisector,
}

/// Rotation taking `X → X'` and `Y → Y'`, via the cross-product axis.
pub fn recover_sphere_rotation<T: Real>(
    x: UnitVector3<T>,
    xp: UnitVector3<T>,
    y: UnitVector3<T>,
    yp: UnitVector3<T>,
) -> Result<Rotation3<T>, SphereError> {
    recover_sphere_rotation_with(AxisMethod::CrossProduct, x, xp, y, yp)
}

pub fn recover_sphere_rotation_with<T: Real>(
    method: AxisMethod,
    x: UnitVector3<T>,
    xp: UnitVector3<T>,
    y: UnitVector3<T>,
    yp: UnitVector3<T>,
) -> Result<Rotation3<T>, SphereError> {
    check_isometric(&x, &xp, &y, &yp)?;
    let fixed_tol = T::tol(1e-12);
    let x_fixed = (x.0 - xp.0).norm() <= fixed_tol;
    let y_fixed = (y.0 - yp.0).norm() <= fixed_tol;
    let axis = match (x_fixed, y_fixed) {
        (true, true) => return Err(SphereError::IdentityCorrespondence),
        // a fixed point off the origin lies on the axis
        (true, false) => x,
        (false, true) => y,
        (false, false) => match method {
            AxisMethod::Bisector => recover_axis_geometric(x, xp, y, yp)?,
            AxisMethod::CrossProduct => match recover_axis_cross(x, xp, y, yp) {
                Err(SphereError::DegenerateAxis) => recover_axis_geometric(x, xp, y, yp)?,
                other => other?,
            },
        },
    };

    // measure the angle on whichever point sits farther from the axis
    let off_axis = |p: &UnitVector3<T>| cross(axis.0, p.0).norm();
    let (from, to) = if off_axis(&x) >= off_axis(&y) {
        (x, xp)
    } else {
        (y, yp)
    };
    let angle = rotation_angle_about_axis(axis, from, to)?;
    Ok(Rotation3::new(axis, angle))
}

/// Axis-angle form of a rotation matrix together with its eigen-structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngleDecomposition<T> {
    pub rotation: Rotation3<T>,
    /// `None` for the identity, where every direction is an eigenvector.
    pub eigen: Option<Eig3Result<T>>,
}

/// Decomposes `m` via its eigenvalue-1 eigenvector.
///
/// The eigenvector's sign is fixed by the skew part `(M − Mᵀ)/2 = sin θ·[axis]ₓ`
/// so that `sin θ ≥ 0`. At a half turn the skew part vanishes and the
/// eigenvector keeps its canonical sign. The angle is `atan2(sin θ, cos θ)`
/// with `cos θ = (tr M − 1)/2`, the real part of the complex eigenvalue pair.
pub fn decompose_rotation_matrix<T: Real>(
    m: &RotationMatrix3<T>,
) -> Result<AxisAngleDecomposition<T>, SphereError> {
    let eig = match eig3_rotation(&m.m) {
        Ok(e) => e,
        Err(LinalgError::IdentityRotation) => {
            return Ok(AxisAngleDecomposition {
                rotation: Rotation3::identity(),
                eigen: None,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let r = &m.m.rows;
    let two = T::lit(2.0);
    let skew = Vec3::new(
        (r[2][1] - r[1][2]) / two,
        (r[0][2] - r[2][0]) / two,
        (r[1][0] - r[0][1]) / two,
    );
    let mut axis = UnitVector3(eig.axis);
    let mut sin = skew.dot(axis.0);
    if sin < T::zero() {
        axis = -axis;
        sin = -sin;
    }
    let cos = (m.m.trace() - T::one()) / two;
    let angle = sin.atan2(cos);
    debug_assert!(
        (angle - eig.complex_pair.0.acos()).abs() < T::tol(1e-6),
        "trace and eigenvalue routes disagree"
    );
    Ok(AxisAngleDecomposition {
        rotation: Rotation3::new(axis, angle),
        eigen: Some(eig),
    })
}

pub fn axis_angle_from_matrix<T: Real>(m: &RotationMatrix3<T>) -> Result<Rotation3<T>, SphereError> {
    decompose_rotation_matrix(m).map(|d| d.rotation)
}

/// `outer ∘ inner` (apply `inner` first) through the matrix product.
pub fn compose_sphere_rotations<T: Real>(outer: &Rotation3<T>, inner: &Rotation3<T>) -> Rotation3<T> {
    compose_sphere_rotations_decomposed(outer, inner).rotation
}

/// Like [`compose_sphere_rotations`], also returning the eigen-structure of the
/// product matrix.
pub fn compose_sphere_rotations_decomposed<T: Real>(
    outer: &Rotation3<T>,
    inner: &Rotation3<T>,
) -> AxisAngleDecomposition<T> {
    let product = outer.matrix().mul(&inner.matrix());
    decompose_rotation_matrix(&product)
        .expect("product of two rotation matrices is a rotation matrix")
}
