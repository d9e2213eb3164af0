//! Orientation-preserving isometries of the plane.
//!
//! A planar rotation `A_{P,θ}` maps `X ↦ P + R_θ(X − P)`, where `R_θ` is the
//! counterclockwise rotation about the origin. Together with translations and
//! the identity, rotations form the orientation-preserving subgroup; line
//! reflections are the orientation-reversing generators.
//!
//! Two independent routes recover a rotation from a segment correspondence:
//! the algebraic one solves the 2×2 system for `(cos θ, sin θ)` and then
//! `(I − R_θ) P = X' − R_θ X`; the geometric one intersects the perpendicular
//! bisectors of `XX'` and `YY'`.

use thiserror::Error;

use crate::linalg::{solve2, LinalgError, Mat2, Vec2};
use crate::scalar::{normalize_angle, Real};

/// Below this absolute angle a recovered or composed motion is a translation.
pub const MIN_ROTATION_ANGLE: f64 = 1e-9;

/// Relative tolerance on the equal-length precondition of segment recovery.
pub const LENGTH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum PlanarError {
    #[error("segment lengths differ: {src} vs {dst}")]
    LengthMismatch { src: f64, dst: f64 },
    #[error("segment has coincident endpoints")]
    DegenerateSegment,
    #[error("perpendicular bisectors are parallel; the motion is a translation")]
    ParallelBisectors,
    #[error("every point is fixed; the bisector construction is undefined")]
    DegenerateBisector,
    #[error("a zero-angle rotation has no two-reflection decomposition")]
    ZeroAngle,
    #[error("line direction must be non-zero")]
    ZeroDirection,
    #[error("composition of a reflection with a rotation or translation is a glide reflection")]
    GlideReflection,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Rotation about `pivot` by a counterclockwise `angle` in `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation2<T> {
    pub pivot: Vec2<T>,
    pub angle: T,
}

impl<T: Real> Rotation2<T> {
    pub fn new(pivot: Vec2<T>, angle: T) -> Self {
        Self {
            pivot,
            angle: normalize_angle(angle),
        }
    }

    /// The central rotation `R_θ`.
    pub fn matrix(&self) -> Mat2<T> {
        Mat2::rotation(self.angle)
    }

    pub fn apply(&self, p: Vec2<T>) -> Vec2<T> {
        self.pivot + self.matrix().mul_vec(p - self.pivot)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Translation2<T> {
    pub v: Vec2<T>,
}

impl<T: Real> Translation2<T> {
    pub fn new(v: Vec2<T>) -> Self {
        Self { v }
    }

    pub fn apply(&self, p: Vec2<T>) -> Vec2<T> {
        p + self.v
    }
}

/// Infinite line through `point` along a unit `direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2<T> {
    point: Vec2<T>,
    direction: Vec2<T>,
}

impl<T: Real> Line2<T> {
    /// Normalizes `direction`; fails on the zero vector.
    pub fn new(point: Vec2<T>, direction: Vec2<T>) -> Result<Self, PlanarError> {
        let direction = direction.normalized().ok_or(PlanarError::ZeroDirection)?;
        Ok(Self { point, direction })
    }

    /// Line through `point` making `angle` with the x axis.
    pub fn from_angle(point: Vec2<T>, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            point,
            direction: Vec2::new(c, s),
        }
    }

    pub fn through(a: Vec2<T>, b: Vec2<T>) -> Result<Self, PlanarError> {
        Self::new(a, b - a)
    }

    pub fn point(&self) -> Vec2<T> {
        self.point
    }

    pub fn direction(&self) -> Vec2<T> {
        self.direction
    }

    /// Angle of the direction with the x axis, in `(−π, π]`.
    pub fn angle(&self) -> T {
        self.direction.y.atan2(self.direction.x)
    }

    /// Signed distance of `p` from the line, positive on the left.
    pub fn signed_distance(&self, p: Vec2<T>) -> T {
        self.direction.perp_dot(p - self.point)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection2<T> {
    pub line: Line2<T>,
}

impl<T: Real> Reflection2<T> {
    pub fn new(line: Line2<T>) -> Self {
        Self { line }
    }

    pub fn apply(&self, p: Vec2<T>) -> Vec2<T> {
        reflect(&self.line, p)
    }
}

/// Segment `XY` with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment2<T> {
    a: Vec2<T>,
    b: Vec2<T>,
}

impl<T: Real> Segment2<T> {
    pub fn new(a: Vec2<T>, b: Vec2<T>) -> Result<Self, PlanarError> {
        let len = (a - b).norm();
        let scale = a.max_abs().max(b.max_abs());
        if len.is_nan() || len <= T::tol(1e-12) * scale || len == T::zero() {
            return Err(PlanarError::DegenerateSegment);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> Vec2<T> {
        self.a
    }

    pub fn b(&self) -> Vec2<T> {
        self.b
    }

    pub fn length(&self) -> T {
        (self.a - self.b).norm()
    }

    pub fn map_with(&self, f: impl Fn(Vec2<T>) -> Vec2<T>) -> Result<Self, PlanarError> {
        Self::new(f(self.a), f(self.b))
    }

    fn scale(&self) -> T {
        self.a.max_abs().max(self.b.max_abs())
    }
}

/// An isometry of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanarIsometry<T> {
    Identity,
    Rotation(Rotation2<T>),
    Translation(Translation2<T>),
    Reflection(Reflection2<T>),
}

impl<T: Real> PlanarIsometry<T> {
    pub fn apply(&self, p: Vec2<T>) -> Vec2<T> {
        apply_planar(self, p)
    }

    pub fn preserves_orientation(&self) -> bool {
        !matches!(self, Self::Reflection(_))
    }

    /// `self ∘ inner`: apply `inner` first.
    ///
    /// Orientation-preserving pairs close to a rotation, translation or the
    /// identity; two reflections compose to one of those as well. A reflection
    /// combined with anything else is generally a glide reflection, which has
    /// no variant here.
    pub fn compose(&self, inner: &Self) -> Result<Self, PlanarError> {
        use PlanarIsometry::*;
        match (self, inner) {
            (Reflection(second), Reflection(first)) => Ok(compose_reflections(first, second)),
            (Reflection(_), _) | (_, Reflection(_)) => Err(PlanarError::GlideReflection),
            _ => {
                let outer = AffineMotion::from_isometry(self);
                let inner_m = AffineMotion::from_isometry(inner);
                let combined = outer.after(&inner_m);
                combined.classify(self.scale().max(inner.scale()))
            }
        }
    }

    fn scale(&self) -> T {
        match self {
            Self::Identity => T::zero(),
            Self::Rotation(r) => r.pivot.max_abs(),
            Self::Translation(t) => t.v.max_abs(),
            Self::Reflection(r) => r.line.point.max_abs(),
        }
    }
}

/// `x ↦ R_θ x + offset`.
#[derive(Debug, Clone, Copy)]
struct AffineMotion<T> {
    angle: T,
    offset: Vec2<T>,
}

impl<T: Real> AffineMotion<T> {
    fn from_isometry(iso: &PlanarIsometry<T>) -> Self {
        match iso {
            PlanarIsometry::Identity | PlanarIsometry::Reflection(_) => Self {
                angle: T::zero(),
                offset: Vec2::zero(),
            },
            PlanarIsometry::Translation(t) => Self {
                angle: T::zero(),
                offset: t.v,
            },
            PlanarIsometry::Rotation(r) => Self {
                angle: r.angle,
                offset: r.pivot - r.matrix().mul_vec(r.pivot),
            },
        }
    }

    fn after(&self, inner: &Self) -> Self {
        Self {
            angle: normalize_angle(self.angle + inner.angle),
            offset: Mat2::rotation(self.angle).mul_vec(inner.offset) + self.offset,
        }
    }

    fn classify(&self, scale: T) -> Result<PlanarIsometry<T>, PlanarError> {
        if self.angle.abs() < T::tol(MIN_ROTATION_ANGLE) {
            return Ok(translation_or_identity(self.offset, scale));
        }
        let lhs = Mat2::identity().sub_mat(&Mat2::rotation(self.angle));
        let pivot = solve2(&lhs, self.offset)?;
        Ok(PlanarIsometry::Rotation(Rotation2::new(pivot, self.angle)))
    }
}

fn translation_or_identity<T: Real>(v: Vec2<T>, scale: T) -> PlanarIsometry<T> {
    if v.norm() <= T::tol(1e-12) * (T::one() + scale) {
        PlanarIsometry::Identity
    } else {
        PlanarIsometry::Translation(Translation2::new(v))
    }
}

pub fn apply_planar<T: Real>(iso: &PlanarIsometry<T>, p: Vec2<T>) -> Vec2<T> {
    match iso {
        PlanarIsometry::Identity => p,
        PlanarIsometry::Rotation(r) => r.apply(p),
        PlanarIsometry::Translation(t) => t.apply(p),
        PlanarIsometry::Reflection(r) => r.apply(p),
    }
}

/// Solves `R_θ (X − Y) = X' − Y'` for `(cos θ, sin θ)`.
///
/// The unknowns enter linearly, giving
/// `[[dx, −dy], [dy, dx]] · (cos θ, sin θ)ᵀ = (dx', dy')ᵀ` with `d = X − Y`.
/// The solution lies on the unit circle exactly when the two segments have the
/// same length.
pub fn solve_cos_sin<T: Real>(
    src: &Segment2<T>,
    dst: &Segment2<T>,
) -> Result<(T, T), PlanarError> {
    let d = src.a - src.b;
    let dp = dst.a - dst.b;
    let m = Mat2::new([[d.x, -d.y], [d.y, d.x]]);
    let cs = solve2(&m, dp).map_err(|_| PlanarError::DegenerateSegment)?;
    Ok((cs.x, cs.y))
}

/// Fails with `LengthMismatch` unless the segments agree in length within
/// the relative [`LENGTH_TOLERANCE`].
pub fn check_lengths<T: Real>(src: &Segment2<T>, dst: &Segment2<T>) -> Result<(), PlanarError> {
    let (ls, ld) = (src.length(), dst.length());
    if (ls - ld).abs() > T::tol(LENGTH_TOLERANCE) * ls.max(ld) {
        return Err(PlanarError::LengthMismatch {
            src: ls.to_f64().unwrap_or(f64::NAN),
            dst: ld.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Algebraic recovery of the orientation-preserving isometry taking `src` to `dst`.
pub fn recover_planar<T: Real>(
    src: &Segment2<T>,
    dst: &Segment2<T>,
) -> Result<PlanarIsometry<T>, PlanarError> {
    check_lengths(src, dst)?;
    let (c, s) = solve_cos_sin(src, dst)?;
    let angle = s.atan2(c);
    let scale = src.scale().max(dst.scale());
    if angle.abs() < T::tol(MIN_ROTATION_ANGLE) {
        let v = ((dst.a - src.a) + (dst.b - src.b)).scale(T::lit(0.5));
        return Ok(translation_or_identity(v, scale));
    }
    let rot = Mat2::rotation(angle);
    let lhs = Mat2::identity().sub_mat(&rot);
    let pivot = solve2(&lhs, dst.a - rot.mul_vec(src.a))?;
    Ok(PlanarIsometry::Rotation(Rotation2::new(pivot, angle)))
}

/// Pivot of the rotation taking `src` to `dst`, as the intersection of the
/// perpendicular bisectors of `XX'` and `YY'`.
///
/// A fixed endpoint is itself the pivot. When both bisectors coincide (the
/// endpoints and pivot are collinear, e.g. a symmetric half turn) the
/// construction is underdetermined and the algebraic pivot is returned.
pub fn recover_pivot_geometric<T: Real>(
    src: &Segment2<T>,
    dst: &Segment2<T>,
) -> Result<Vec2<T>, PlanarError> {
    let scale = src.scale().max(dst.scale()).max(T::one());
    let fixed_tol = T::tol(1e-12) * scale;
    let n1 = dst.a - src.a;
    let n2 = dst.b - src.b;
    match (n1.norm() <= fixed_tol, n2.norm() <= fixed_tol) {
        (true, true) => return Err(PlanarError::DegenerateBisector),
        (true, false) => return Ok(src.a),
        (false, true) => return Ok(src.b),
        (false, false) => {}
    }

    let m1 = (src.a + dst.a).scale(T::lit(0.5));
    let m2 = (src.b + dst.b).scale(T::lit(0.5));
    let (l1, l2) = (n1.norm(), n2.norm());
    if n1.perp_dot(n2).abs() <= T::tol(1e-10) * l1 * l2 {
        let coincident = n1.dot(m2 - m1).abs() <= T::tol(1e-9) * l1 * scale;
        if coincident {
            if let PlanarIsometry::Rotation(r) = recover_planar(src, dst)? {
                return Ok(r.pivot);
            }
        }
        return Err(PlanarError::ParallelBisectors);
    }
    let m = Mat2::new([[n1.x, n1.y], [n2.x, n2.y]]);
    Ok(solve2(&m, Vec2::new(n1.dot(m1), n2.dot(m2)))?)
}

/// Composite `outer ∘ inner` of two rotations (`inner` applied first).
///
/// The angles add. When they cancel the result is the translation
/// `(I − R_α)(G − H)`; otherwise the pivot solves
/// `(I − R_{α+β}) P = G + R_α H − R_{α+β} H − R_α G`.
pub fn compose_rotations_planar<T: Real>(
    outer: &Rotation2<T>,
    inner: &Rotation2<T>,
) -> PlanarIsometry<T> {
    let (g, alpha) = (outer.pivot, outer.angle);
    let (h, beta) = (inner.pivot, inner.angle);
    let total = normalize_angle(alpha + beta);
    let r_alpha = Mat2::rotation(alpha);
    let scale = g.max_abs().max(h.max_abs());
    if total.abs() < T::tol(MIN_ROTATION_ANGLE) {
        let v = Mat2::identity().sub_mat(&r_alpha).mul_vec(g - h);
        return translation_or_identity(v, scale);
    }
    let r_total = Mat2::rotation(total);
    let rhs = g + r_alpha.mul_vec(h) - r_total.mul_vec(h) - r_alpha.mul_vec(g);
    let lhs = Mat2::identity().sub_mat(&r_total);
    // |total| ≥ MIN_ROTATION_ANGLE keeps det(I − R) = 2 − 2cos(total) well above
    // the scale-relative singularity threshold.
    let pivot = solve2(&lhs, rhs).expect("I - R is invertible for a non-zero angle");
    PlanarIsometry::Rotation(Rotation2::new(pivot, total))
}

/// Mirror image of `p` across `line`.
pub fn reflect<T: Real>(line: &Line2<T>, p: Vec2<T>) -> Vec2<T> {
    let rel = p - line.point;
    let along = line.direction.scale(rel.dot(line.direction));
    line.point + along.scale(T::lit(2.0)) - rel
}

/// Reflection across `first`, then across `second`.
///
/// Intersecting lines give a rotation about the intersection by twice the
/// signed angle from `first`'s direction to `second`'s. Parallel lines give a
/// translation by twice the offset from `first` to `second`.
pub fn compose_reflections<T: Real>(
    first: &Reflection2<T>,
    second: &Reflection2<T>,
) -> PlanarIsometry<T> {
    let (l1, l2) = (&first.line, &second.line);
    let sin = l1.direction.perp_dot(l2.direction);
    let cos = l1.direction.dot(l2.direction);
    let scale = l1.point.max_abs().max(l2.point.max_abs());
    if sin.abs() <= T::tol(1e-12) {
        let normal = l1.direction.perp();
        let offset = normal.scale(normal.dot(l2.point - l1.point));
        return translation_or_identity(offset.scale(T::lit(2.0)), scale);
    }
    // l1.point + t·d1 lies on l2
    let t = (l2.point - l1.point).perp_dot(l2.direction) / sin;
    let pivot = l1.point + l1.direction.scale(t);
    let angle = T::lit(2.0) * sin.atan2(cos);
    PlanarIsometry::Rotation(Rotation2::new(pivot, angle))
}

/// Two reflections whose composite is `rot`.
///
/// The first line runs through the pivot parallel to the x axis; the second
/// through the pivot at `rot.angle / 2`.
pub fn reflections_for_rotation<T: Real>(
    rot: &Rotation2<T>,
) -> Result<(Reflection2<T>, Reflection2<T>), PlanarError> {
    if rot.angle.abs() < T::tol(MIN_ROTATION_ANGLE) {
        return Err(PlanarError::ZeroAngle);
    }
    let first = Line2::from_angle(rot.pivot, T::zero());
    let second = Line2::from_angle(rot.pivot, rot.angle / T::lit(2.0));
    Ok((Reflection2::new(first), Reflection2::new(second)))
}

/// Winding of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Clockwise = -1,
    Collinear = 0,
    CounterClockwise = 1,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        self as i8
    }
}

pub fn orientation_sign<T: Real>(a: Vec2<T>, b: Vec2<T>, c: Vec2<T>) -> Orientation {
    let (ab, ac) = (b - a, c - a);
    let area2 = ab.perp_dot(ac);
    if area2.abs() <= T::tol(1e-12) * ab.norm() * ac.norm() {
        Orientation::Collinear
    } else if area2 > T::zero() {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

#[cfg(test)]
// reference values are quoted to four digits
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn v(x: f64, y: f64) -> Vec2<f64> {
        Vec2::new(x, y)
    }

    fn seg(a: (f64, f64), b: (f64, f64)) -> Segment2<f64> {
        Segment2::new(v(a.0, a.1), v(b.0, b.1)).unwrap()
    }

    fn close(a: Vec2<f64>, b: Vec2<f64>, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn rotation_fixes_pivot_and_turns() {
        let r = Rotation2::new(v(3.0, -1.0), 1.2);
        assert!(close(r.apply(v(3.0, -1.0)), v(3.0, -1.0), 1e-15));
        let q = Rotation2::new(Vec2::zero(), FRAC_PI_2);
        assert!(close(q.apply(v(1.0, 0.0)), v(0.0, 1.0), 1e-15));
        let h = Rotation2::new(v(1.0, 0.0), FRAC_PI_2);
        assert!(close(h.apply(v(2.0, 0.0)), v(1.0, 1.0), 1e-15));
    }

    #[test]
    fn rotation_angle_is_normalized() {
        let r = Rotation2::new(Vec2::zero(), 3.0 * PI);
        assert!((r.angle - PI).abs() < 1e-12);
        let r = Rotation2::new(Vec2::zero(), -PI);
        assert_eq!(r.angle, PI);
    }

    #[test]
    fn recover_translation() {
        let iso = recover_planar(&seg((0.0, 0.0), (1.0, 0.0)), &seg((2.0, 3.0), (3.0, 3.0))).unwrap();
        match iso {
            PlanarIsometry::Translation(t) => assert!(close(t.v, v(2.0, 3.0), 1e-12)),
            other => panic!("expected translation, got {other:?}"),
        }
    }

    #[test]
    fn recover_quarter_turn_about_origin() {
        let iso = recover_planar(&seg((1.0, 0.0), (2.0, 0.0)), &seg((0.0, 1.0), (0.0, 2.0))).unwrap();
        match iso {
            PlanarIsometry::Rotation(r) => {
                assert!(close(r.pivot, Vec2::zero(), 1e-12));
                assert!((r.angle - FRAC_PI_2).abs() < 1e-12);
            }
            other => panic!("expected rotation, got {other:?}"),
        }
    }

    #[test]
    fn recover_identity() {
        let s = seg((1.0, 0.0), (2.0, 0.0));
        assert_eq!(recover_planar(&s, &s).unwrap(), PlanarIsometry::Identity);
    }

    #[test]
    fn recover_rejects_length_mismatch_and_degenerate() {
        let err = recover_planar(&seg((0.0, 0.0), (1.0, 0.0)), &seg((0.0, 0.0), (0.0, 1.1)));
        assert!(matches!(err, Err(PlanarError::LengthMismatch { .. })));
        assert_eq!(
            Segment2::new(v(1.0, 1.0), v(1.0, 1.0)),
            Err(PlanarError::DegenerateSegment)
        );
    }

    #[test]
    fn recovered_cos_sin_lie_on_unit_circle() {
        let r = Rotation2::new(v(0.3, -2.0), 2.2);
        let s = seg((1.0, 4.0), (-3.0, 0.5));
        let d = s.map_with(|p| r.apply(p)).unwrap();
        let (c, sn) = solve_cos_sin(&s, &d).unwrap();
        assert!((c * c + sn * sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn geometric_pivot_quarter_turn() {
        let p = recover_pivot_geometric(&seg((1.0, 0.0), (2.0, 0.0)), &seg((0.0, 1.0), (0.0, 2.0))).unwrap();
        assert!(close(p, Vec2::zero(), 1e-12));
    }

    #[test]
    fn geometric_pivot_half_turn_coincident_bisectors() {
        let p = recover_pivot_geometric(&seg((1.0, 0.0), (2.0, 0.0)), &seg((-1.0, 0.0), (-2.0, 0.0))).unwrap();
        assert!(close(p, Vec2::zero(), 1e-12));
    }

    #[test]
    fn geometric_pivot_errors() {
        let t = recover_pivot_geometric(&seg((0.0, 0.0), (1.0, 0.0)), &seg((2.0, 3.0), (3.0, 3.0)));
        assert_eq!(t, Err(PlanarError::ParallelBisectors));
        // endpoints perpendicular to the motion: bisectors coincide but no pivot
        let t = recover_pivot_geometric(&seg((0.0, 0.0), (0.0, 1.0)), &seg((2.0, 0.0), (2.0, 1.0)));
        assert_eq!(t, Err(PlanarError::ParallelBisectors));
        let s = seg((0.0, 0.0), (1.0, 0.0));
        assert_eq!(recover_pivot_geometric(&s, &s), Err(PlanarError::DegenerateBisector));
    }

    #[test]
    fn geometric_pivot_fixed_endpoint() {
        let r = Rotation2::new(v(1.0, 2.0), 0.7);
        let s = seg((1.0, 2.0), (4.0, -1.0));
        let d = s.map_with(|p| r.apply(p)).unwrap();
        assert_eq!(recover_pivot_geometric(&s, &d).unwrap(), v(1.0, 2.0));
    }

    #[test]
    fn compose_example_pivot() {
        let outer = Rotation2::new(Vec2::zero(), FRAC_PI_4);
        let inner = Rotation2::new(v(1.0, 0.0), FRAC_PI_2);
        match compose_rotations_planar(&outer, &inner) {
            PlanarIsometry::Rotation(r) => {
                assert!((r.pivot.x - 0.7071).abs() < 1e-4);
                assert!((r.pivot.y - 0.2929).abs() < 1e-4);
                assert!((r.angle - 3.0 * FRAC_PI_4).abs() < 1e-12);
            }
            other => panic!("expected rotation, got {other:?}"),
        }
    }

    #[test]
    fn compose_shared_pivot() {
        let p = v(2.0, -3.0);
        let c = compose_rotations_planar(&Rotation2::new(p, 0.4), &Rotation2::new(p, 1.1));
        match c {
            PlanarIsometry::Rotation(r) => {
                assert!(close(r.pivot, p, 1e-12));
                assert!((r.angle - 1.5).abs() < 1e-12);
            }
            other => panic!("expected rotation, got {other:?}"),
        }
    }

    #[test]
    fn compose_cancelling_angles_is_translation() {
        let outer = Rotation2::new(Vec2::zero(), -FRAC_PI_2);
        let inner = Rotation2::new(v(1.0, 0.0), FRAC_PI_2);
        let c = compose_rotations_planar(&outer, &inner);
        // sequential evaluation: (0,0) -> (1,-1) -> (-1,-1); (5,7) -> (-6,1)... differences agree
        let seq = |p: Vec2<f64>| outer.apply(inner.apply(p));
        let v0 = seq(v(0.0, 0.0));
        let v1 = seq(v(5.0, 7.0)) - v(5.0, 7.0);
        assert!(close(v0, v1, 1e-12));
        match c {
            PlanarIsometry::Translation(t) => {
                assert!(close(t.v, v0, 1e-12));
                assert!(close(t.v, v(-1.0, -1.0), 1e-12));
            }
            other => panic!("expected translation, got {other:?}"),
        }
    }

    #[test]
    fn reflect_examples() {
        let x_axis = Line2::new(Vec2::zero(), v(1.0, 0.0)).unwrap();
        assert_eq!(reflect(&x_axis, v(3.0, 4.0)), v(3.0, -4.0));
        let diag = Line2::new(Vec2::zero(), v(1.0, 1.0)).unwrap();
        assert!(close(reflect(&diag, v(1.0, 0.0)), v(0.0, 1.0), 1e-15));
        assert!(close(reflect(&diag, v(2.0, 2.0)), v(2.0, 2.0), 1e-15));
    }

    #[test]
    fn compose_reflection_examples() {
        let x_axis = Reflection2::new(Line2::from_angle(Vec2::zero(), 0.0));
        let diag = Reflection2::new(Line2::from_angle(Vec2::zero(), FRAC_PI_4));
        match compose_reflections(&x_axis, &diag) {
            PlanarIsometry::Rotation(r) => {
                assert!(close(r.pivot, Vec2::zero(), 1e-15));
                assert!((r.angle - FRAC_PI_2).abs() < 1e-15);
            }
            other => panic!("expected rotation, got {other:?}"),
        }
        let y1 = Reflection2::new(Line2::from_angle(v(0.0, 1.0), 0.0));
        match compose_reflections(&x_axis, &y1) {
            PlanarIsometry::Translation(t) => assert!(close(t.v, v(0.0, 2.0), 1e-15)),
            other => panic!("expected translation, got {other:?}"),
        }
        assert_eq!(compose_reflections(&diag, &diag), PlanarIsometry::Identity);
    }

    #[test]
    fn reflection_decomposition() {
        let (a, b) = reflections_for_rotation(&Rotation2::new(Vec2::zero(), FRAC_PI_2)).unwrap();
        assert_eq!(a.line.angle(), 0.0);
        assert!((b.line.angle() - FRAC_PI_4).abs() < 1e-15);
        let (a, b) = reflections_for_rotation(&Rotation2::new(v(2.0, 5.0), PI)).unwrap();
        assert!(a.line.direction().dot(b.line.direction()).abs() < 1e-15);
        assert_eq!(a.line.point(), v(2.0, 5.0));
        assert_eq!(b.line.point(), v(2.0, 5.0));
        assert_eq!(
            reflections_for_rotation(&Rotation2::new(v(1.0, 1.0), 0.0)),
            Err(PlanarError::ZeroAngle)
        );
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation_sign(v(0.0, 0.0), v(1.0, 0.0), v(0.0, 1.0)).sign(), 1);
        assert_eq!(orientation_sign(v(0.0, 0.0), v(0.0, 1.0), v(1.0, 0.0)).sign(), -1);
        assert_eq!(orientation_sign(v(0.0, 0.0), v(1.0, 1.0), v(2.0, 2.0)).sign(), 0);
    }

    #[test]
    fn general_compose_matches_formula() {
        let outer = Rotation2::new(Vec2::zero(), FRAC_PI_4);
        let inner = Rotation2::new(v(1.0, 0.0), FRAC_PI_2);
        let a = compose_rotations_planar(&outer, &inner);
        let b = PlanarIsometry::Rotation(outer)
            .compose(&PlanarIsometry::Rotation(inner))
            .unwrap();
        match (a, b) {
            (PlanarIsometry::Rotation(x), PlanarIsometry::Rotation(y)) => {
                assert!(close(x.pivot, y.pivot, 1e-12));
                assert!((x.angle - y.angle).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        let refl = PlanarIsometry::Reflection(Reflection2::new(Line2::from_angle(Vec2::zero(), 0.3)));
        assert_eq!(
            refl.compose(&PlanarIsometry::Rotation(outer)),
            Err(PlanarError::GlideReflection)
        );
    }
}
