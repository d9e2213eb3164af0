//! Problem instances: JSON schema, parsing and validation.

use isometry_core::{Segment2d, SphereSegment, UnitVector3d, Vec2d, Vec3d};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    PlaneRecover,
    PlaneCompose,
    PlaneReflections,
    SphereRecover,
    SphereCompose,
    Baseball,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::PlaneRecover,
        Kind::PlaneCompose,
        Kind::PlaneReflections,
        Kind::SphereRecover,
        Kind::SphereCompose,
        Kind::Baseball,
    ];

    /// Value of the `kind` field.
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::PlaneRecover => "plane_recover",
            Kind::PlaneCompose => "plane_compose",
            Kind::PlaneReflections => "plane_reflections",
            Kind::SphereRecover => "sphere_recover",
            Kind::SphereCompose => "sphere_compose",
            Kind::Baseball => "baseball",
        }
    }

    /// CLI subcommand name.
    pub fn subcommand(self) -> &'static str {
        match self {
            Kind::PlaneRecover => "plane-recover",
            Kind::PlaneCompose => "plane-compose",
            Kind::PlaneReflections => "plane-reflections",
            Kind::SphereRecover => "sphere-recover",
            Kind::SphereCompose => "sphere-compose",
            Kind::Baseball => "baseball",
        }
    }
}

/// A validated problem. Angles are radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemInstance {
    /// Find the motion taking segment `XY` onto `X'Y'`.
    PlaneRecover {
        src: Segment2d,
        dst: Segment2d,
    },
    /// Compose rotation `(G, alpha)` after rotation `(H, beta)`.
    PlaneCompose {
        g: Vec2d,
        alpha: f64,
        h: Vec2d,
        beta: f64,
    },
    /// Split rotation `(P, theta)` into two reflections.
    PlaneReflections {
        p: Vec2d,
        theta: f64,
    },
    SphereRecover(SpherePairs),
    SphereCompose {
        g: UnitVector3d,
        alpha: f64,
        h: UnitVector3d,
        beta: f64,
    },
    /// Two marked points photographed before and after.
    Baseball(SpherePairs),
}

/// Correspondence `X → X'`, `Y → Y'` on the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePairs {
    pub x: UnitVector3d,
    pub y: UnitVector3d,
    pub xp: UnitVector3d,
    pub yp: UnitVector3d,
}

impl ProblemInstance {
    pub fn kind(&self) -> Kind {
        match self {
            Self::PlaneRecover { .. } => Kind::PlaneRecover,
            Self::PlaneCompose { .. } => Kind::PlaneCompose,
            Self::PlaneReflections { .. } => Kind::PlaneReflections,
            Self::SphereRecover(_) => Kind::SphereRecover,
            Self::SphereCompose { .. } => Kind::SphereCompose,
            Self::Baseball(_) => Kind::Baseball,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawInstance {
    PlaneRecover {
        #[serde(rename = "X")]
        x: [f64; 2],
        #[serde(rename = "Y")]
        y: [f64; 2],
        #[serde(rename = "Xp")]
        xp: [f64; 2],
        #[serde(rename = "Yp")]
        yp: [f64; 2],
    },
    PlaneCompose {
        #[serde(rename = "G")]
        g: [f64; 2],
        alpha: f64,
        #[serde(rename = "H")]
        h: [f64; 2],
        beta: f64,
    },
    PlaneReflections {
        #[serde(rename = "P")]
        p: [f64; 2],
        theta: f64,
    },
    SphereRecover(RawSpherePairs),
    SphereCompose {
        #[serde(rename = "G")]
        g: [f64; 3],
        alpha: f64,
        #[serde(rename = "H")]
        h: [f64; 3],
        beta: f64,
    },
    Baseball(RawSpherePairs),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpherePairs {
    #[serde(rename = "X")]
    x: [f64; 3],
    #[serde(rename = "Y")]
    y: [f64; 3],
    #[serde(rename = "Xp")]
    xp: [f64; 3],
    #[serde(rename = "Yp")]
    yp: [f64; 3],
}

/// How angle fields in the input are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngleUnit {
    #[default]
    Radians,
    Degrees,
}

impl AngleUnit {
    pub fn to_radians(self, a: f64) -> f64 {
        match self {
            Self::Radians => a,
            Self::Degrees => a.to_radians(),
        }
    }

    pub fn from_radians(self, a: f64) -> f64 {
        match self {
            Self::Radians => a,
            Self::Degrees => a.to_degrees(),
        }
    }
}

/// Parses one instance (a JSON object) with angles in radians.
pub fn parse_instance(text: &[u8]) -> Result<ProblemInstance, CliError> {
    parse_instance_with(text, AngleUnit::Radians)
}

pub fn parse_instance_with(text: &[u8], unit: AngleUnit) -> Result<ProblemInstance, CliError> {
    let value: serde_json::Value =
        serde_json::from_slice(text).map_err(|e| CliError::Parse(e.to_string()))?;
    instance_from_value(value, unit)
}

/// Parses a file holding either one instance or an array of instances.
pub fn parse_batch(text: &[u8], unit: AngleUnit) -> Result<Batch, CliError> {
    let value: serde_json::Value =
        serde_json::from_slice(text).map_err(|e| CliError::Parse(e.to_string()))?;
    match value {
        serde_json::Value::Array(items) => Ok(Batch::Many(
            items
                .into_iter()
                .map(|v| instance_from_value(v, unit))
                .collect(),
        )),
        other => Ok(Batch::Single(instance_from_value(other, unit))),
    }
}

#[derive(Debug)]
pub enum Batch {
    Single(Result<ProblemInstance, CliError>),
    Many(Vec<Result<ProblemInstance, CliError>>),
}

fn instance_from_value(
    value: serde_json::Value,
    unit: AngleUnit,
) -> Result<ProblemInstance, CliError> {
    let raw: RawInstance =
        serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))?;
    validate(raw, unit)
}

fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::validation(format!("{name} is not finite")))
    }
}

fn point2(name: &str, [x, y]: [f64; 2]) -> Result<Vec2d, CliError> {
    finite(name, x)?;
    finite(name, y)?;
    Ok(Vec2d::new(x, y))
}

fn segment2(a_name: &str, a: Vec2d, b_name: &str, b: Vec2d) -> Result<Segment2d, CliError> {
    Segment2d::new(a, b).map_err(|_| CliError::Validation {
        code: "DegenerateSegment",
        message: format!("{a_name} and {b_name} coincide; the segment is degenerate"),
    })
}

fn sphere_point(name: &str, [x, y, z]: [f64; 3]) -> Result<UnitVector3d, CliError> {
    UnitVector3d::new(Vec3d::new(x, y, z)).map_err(|e| {
        CliError::validation(format!("{name} is not on the unit sphere: {e}"))
    })
}

fn sphere_pairs(raw: RawSpherePairs) -> Result<SpherePairs, CliError> {
    let pairs = SpherePairs {
        x: sphere_point("X", raw.x)?,
        y: sphere_point("Y", raw.y)?,
        xp: sphere_point("Xp", raw.xp)?,
        yp: sphere_point("Yp", raw.yp)?,
    };
    for (an, a, bn, b) in [("X", pairs.x, "Y", pairs.y), ("Xp", pairs.xp, "Yp", pairs.yp)] {
        SphereSegment::new(a, b).map_err(|e| CliError::Validation {
            code: CliError::from(e).code(),
            message: format!("segment {an}{bn} is invalid: {e}"),
        })?;
    }
    Ok(pairs)
}

fn validate(raw: RawInstance, unit: AngleUnit) -> Result<ProblemInstance, CliError> {
    let angle = |name: &str, a: f64| finite(name, a).map(|a| unit.to_radians(a));
    Ok(match raw {
        RawInstance::PlaneRecover { x, y, xp, yp } => {
            let (x, y) = (point2("X", x)?, point2("Y", y)?);
            let (xp, yp) = (point2("Xp", xp)?, point2("Yp", yp)?);
            ProblemInstance::PlaneRecover {
                src: segment2("X", x, "Y", y)?,
                dst: segment2("Xp", xp, "Yp", yp)?,
            }
        }
        RawInstance::PlaneCompose { g, alpha, h, beta } => ProblemInstance::PlaneCompose {
            g: point2("G", g)?,
            alpha: angle("alpha", alpha)?,
            h: point2("H", h)?,
            beta: angle("beta", beta)?,
        },
        RawInstance::PlaneReflections { p, theta } => ProblemInstance::PlaneReflections {
            p: point2("P", p)?,
            theta: angle("theta", theta)?,
        },
        RawInstance::SphereRecover(pairs) => ProblemInstance::SphereRecover(sphere_pairs(pairs)?),
        RawInstance::Baseball(pairs) => ProblemInstance::Baseball(sphere_pairs(pairs)?),
        RawInstance::SphereCompose { g, alpha, h, beta } => ProblemInstance::SphereCompose {
            g: sphere_point("G", g)?,
            alpha: angle("alpha", alpha)?,
            h: sphere_point("H", h)?,
            beta: angle("beta", beta)?,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_composition_example() {
        let text = br#"{"kind":"plane_compose","G":[0,0],"alpha":0.7853981634,"H":[1,0],"beta":1.5707963268}"#;
        match parse_instance(text).unwrap() {
            ProblemInstance::PlaneCompose { g, alpha, h, beta } => {
                assert_eq!(g, Vec2d::new(0.0, 0.0));
                assert_eq!(h, Vec2d::new(1.0, 0.0));
                assert!((alpha - std::f64::consts::FRAC_PI_4).abs() < 1e-10);
                assert!((beta - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_plane_segment_is_validation_error() {
        let text = br#"{"kind":"plane_recover","X":[1,1],"Y":[1,1],"Xp":[0,0],"Yp":[0,1]}"#;
        let e = parse_instance(text).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn near_unit_sphere_point_is_renormalized() {
        let text = br#"{"kind":"sphere_recover","X":[0.6,0.8,0.0001],"Y":[0,0,1],"Xp":[0.6,0.8,0],"Yp":[0,0,1]}"#;
        match parse_instance(text).unwrap() {
            ProblemInstance::SphereRecover(p) => assert!((p.x.vec().norm() - 1.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        let far = br#"{"kind":"sphere_recover","X":[0.6,0.8,0.1],"Y":[0,0,1],"Xp":[0.6,0.8,0],"Yp":[0,0,1]}"#;
        assert_eq!(parse_instance(far).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn antipodal_sphere_segment_rejected() {
        let text = br#"{"kind":"baseball","X":[1,0,0],"Y":[-1,0,0],"Xp":[0,1,0],"Yp":[0,-1,0]}"#;
        assert_eq!(parse_instance(text).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn schema_and_parse_errors() {
        assert!(matches!(parse_instance(b"{not json"), Err(CliError::Parse(_))));
        let missing = br#"{"kind":"plane_reflections","P":[0,0]}"#;
        assert!(matches!(parse_instance(missing), Err(CliError::Schema(_))));
        let extra = br#"{"kind":"plane_reflections","P":[0,0],"theta":1,"extra":2}"#;
        assert!(matches!(parse_instance(extra), Err(CliError::Schema(_))));
        let unknown = br#"{"kind":"glide","P":[0,0]}"#;
        assert!(matches!(parse_instance(unknown), Err(CliError::Schema(_))));
        let extra_sphere = br#"{"kind":"baseball","X":[1,0,0],"Y":[0,1,0],"Xp":[1,0,0],"Yp":[0,1,0],"Z":[0,0,1]}"#;
        assert!(matches!(parse_instance(extra_sphere), Err(CliError::Schema(_))));
        let wrong_arity = br#"{"kind":"plane_reflections","P":[0,0,0],"theta":1}"#;
        assert!(matches!(parse_instance(wrong_arity), Err(CliError::Schema(_))));
    }

    #[test]
    fn degrees_are_converted() {
        let text = br#"{"kind":"plane_reflections","P":[0,0],"theta":90}"#;
        match parse_instance_with(text, AngleUnit::Degrees).unwrap() {
            ProblemInstance::PlaneReflections { theta, .. } => {
                assert!((theta - std::f64::consts::FRAC_PI_2).abs() < 1e-15)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn batch_keeps_order() {
        let text = br#"[{"kind":"plane_reflections","P":[0,0],"theta":1},{"kind":"bad"}]"#;
        match parse_batch(text, AngleUnit::Radians).unwrap() {
            Batch::Many(items) => {
                assert_eq!(items.len(), 2);
                assert!(items[0].is_ok());
                assert!(items[1].is_err());
            }
            other => panic!("{other:?}"),
        }
    }
}
