//! Rigid motions of the plane and of the unit sphere.
//!
//! The crate recovers, composes and decomposes orientation-preserving
//! isometries, each by an algebraic route (linear solves, eigen-structure) and
//! a geometric one (perpendicular-bisector constructions), so that the two can
//! be checked against each other.
//!
//! - [`linalg`]: fixed-size vectors and matrices, the cross product, a 2×2
//!   solver and the eigen-structure of 3×3 rotation matrices.
//! - [`planar`]: rotations, translations and line reflections of the plane.
//! - [`spherical`]: rotations of the unit sphere and great-circle geometry.
//!
//! All types are generic over the scalar ([`Real`], implemented for `f32` and
//! `f64`). The aliases below fix the scalar to `f64` (`…d`) or `f32` (`…f`).

pub mod linalg;
pub mod planar;
pub mod scalar;
pub mod spherical;

pub use linalg::{cross, eig3_rotation, solve2, Eig3Result, LinalgError, Mat2, Mat3, Vec2, Vec3};
pub use planar::{
    apply_planar, compose_reflections, compose_rotations_planar, orientation_sign,
    recover_pivot_geometric, recover_planar, reflect, reflections_for_rotation, Line2,
    Orientation, PlanarError, PlanarIsometry, Reflection2, Rotation2, Segment2, Translation2,
};
pub use scalar::{angle_distance, normalize_angle, Real};
pub use spherical::{
    apply_sphere, axis_angle_from_matrix, bisector_great_circle, compose_sphere_rotations,
    intersect_great_circles, recover_axis_cross, recover_axis_geometric, recover_sphere_rotation,
    rotation_angle_about_axis, rotation_matrix, AxisMethod, GreatCircle, Rotation3,
    RotationMatrix3, SphereError, SphereSegment, UnitVector3,
};

pub type Vec2d = Vec2<f64>;
pub type Vec3d = Vec3<f64>;
pub type Mat2d = Mat2<f64>;
pub type Mat3d = Mat3<f64>;
pub type Rotation2d = Rotation2<f64>;
pub type Translation2d = Translation2<f64>;
pub type Line2d = Line2<f64>;
pub type Reflection2d = Reflection2<f64>;
pub type Segment2d = Segment2<f64>;
pub type PlanarIsometryd = PlanarIsometry<f64>;
pub type UnitVector3d = UnitVector3<f64>;
pub type Rotation3d = Rotation3<f64>;
pub type RotationMatrix3d = RotationMatrix3<f64>;
pub type GreatCircled = GreatCircle<f64>;

pub type Vec2f = Vec2<f32>;
pub type Vec3f = Vec3<f32>;
pub type Rotation2f = Rotation2<f32>;
pub type PlanarIsometryf = PlanarIsometry<f32>;
pub type UnitVector3f = UnitVector3<f32>;
pub type Rotation3f = Rotation3<f32>;
