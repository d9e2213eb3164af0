//! Dispatch of problem instances to the planar and spherical solvers.

use clap::ValueEnum;
use isometry_core::planar::{check_lengths, MIN_ROTATION_ANGLE};
use isometry_core::spherical::{
    chord_arcsin_angle, compose_sphere_rotations_decomposed, recover_sphere_rotation_with,
};
use isometry_core::{
    angle_distance, compose_reflections, compose_rotations_planar, recover_pivot_geometric,
    recover_planar, reflections_for_rotation, AxisMethod, PlanarError, PlanarIsometryd,
    Reflection2d, Rotation2d, Rotation3d, Segment2d, SphereError, Translation2d, UnitVector3d,
    Vec2d, Vec3d,
};
use serde::Serialize;

use crate::error::CliError;
use crate::instance::{AngleUnit, ProblemInstance, SpherePairs};
use crate::svg::{Element, FigureSpec, Role};

/// Residuals above this (times the problem scale) mean a solver bug.
const RESIDUAL_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Algebraic,
    Geometric,
    #[default]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub method: Method,
    /// Threshold above which a cross-route discrepancy is flagged.
    pub tolerance: f64,
    /// Unit for angles in the output.
    pub angle_unit: AngleUnit,
    /// View direction for sphere figures, pointing at the viewer.
    pub view: Vec3d,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            method: Method::Both,
            tolerance: 1e-9,
            angle_unit: AngleUnit::Radians,
            view: Vec3d::unit_z(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineRecord {
    pub point: [f64; 2],
    pub direction: [f64; 2],
    /// Angle with the x axis.
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenRecord {
    pub real_eigenvalue: f64,
    /// `(a, b)` of the conjugate pair `a ± b i`.
    pub complex_pair: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Solution {
    Identity {
        #[serde(skip_serializing_if = "Option::is_none")]
        fixed_points: Option<&'static str>,
    },
    Rotation {
        pivot: [f64; 2],
        angle: f64,
    },
    Translation {
        vector: [f64; 2],
    },
    Reflections {
        pivot: [f64; 2],
        angle: f64,
        first: LineRecord,
        second: LineRecord,
    },
    SphereRotation {
        axis: [f64; 3],
        angle: f64,
        fixed_points: [[f64; 3]; 2],
        #[serde(skip_serializing_if = "Option::is_none")]
        eigen: Option<EigenRecord>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionRecord {
    pub result: Solution,
    pub method: Method,
    /// Max pointwise error of `result` on the instance's own points.
    pub residual: f64,
    /// With `method = both`: distance between the two routes' answers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<f64>,
    /// With `method = both`: the geometric route's answer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometric: Option<Solution>,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub figure: FigureSpec,
}

impl SolutionRecord {
    /// JSON form with values rounded to 10 significant digits. Residual and
    /// discrepancy are emitted at full precision.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("records always serialize");
        round_numbers(&mut v, None);
        v
    }
}

fn round_numbers(v: &mut serde_json::Value, key: Option<&str>) {
    match v {
        serde_json::Value::Number(n) => {
            if matches!(key, Some("residual" | "discrepancy")) {
                return;
            }
            if let Some(x) = n.as_f64() {
                if !n.is_f64() {
                    return;
                }
                let mut r: f64 = format!("{x:.9e}").parse().unwrap_or(x);
                if r == 0.0 {
                    r = 0.0; // drop the sign of negative zero
                }
                if let Some(num) = serde_json::Number::from_f64(r) {
                    *n = num;
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                round_numbers(item, key);
            }
        }
        serde_json::Value::Object(map) => {
            for (k, item) in map.iter_mut() {
                round_numbers(item, Some(k.as_str()));
            }
        }
        _ => {}
    }
}

fn arr2(v: Vec2d) -> [f64; 2] {
    v.to_array()
}

fn arr3(v: Vec3d) -> [f64; 3] {
    v.to_array()
}

fn plane_solution(iso: &PlanarIsometryd, unit: AngleUnit) -> Solution {
    match iso {
        PlanarIsometryd::Identity => Solution::Identity { fixed_points: None },
        PlanarIsometryd::Rotation(r) => Solution::Rotation {
            pivot: arr2(r.pivot),
            angle: unit.from_radians(r.angle),
        },
        PlanarIsometryd::Translation(t) => Solution::Translation { vector: arr2(t.v) },
        // recovery and composition never produce a bare reflection
        PlanarIsometryd::Reflection(_) => unreachable!("orientation-preserving results only"),
    }
}

fn sphere_solution(r: &Rotation3d, eigen: Option<EigenRecord>, unit: AngleUnit) -> Solution {
    if r.angle() == 0.0 {
        return Solution::Identity {
            fixed_points: Some("all"),
        };
    }
    let axis = r.axis().vec();
    Solution::SphereRotation {
        axis: arr3(axis),
        angle: unit.from_radians(r.angle()),
        fixed_points: [arr3(axis), arr3(-axis)],
        eigen,
    }
}

/// Runs the solver(s) selected by `options.method` on `instance`.
pub fn run(instance: &ProblemInstance, options: &RunOptions) -> Result<SolutionRecord, CliError> {
    let mut record = match *instance {
        ProblemInstance::PlaneRecover { src, dst } => plane_recover(&src, &dst, options)?,
        ProblemInstance::PlaneCompose { g, alpha, h, beta } => {
            plane_compose(Rotation2d::new(g, alpha), Rotation2d::new(h, beta), options)?
        }
        ProblemInstance::PlaneReflections { p, theta } => {
            plane_reflections(Rotation2d::new(p, theta), options)?
        }
        ProblemInstance::SphereRecover(pairs) => sphere_recover(&pairs, options, false)?,
        ProblemInstance::Baseball(pairs) => return run_baseball(&pairs, options),
        ProblemInstance::SphereCompose { g, alpha, h, beta } => {
            sphere_compose(Rotation3d::new(g, alpha), Rotation3d::new(h, beta), options)?
        }
    };
    flag_discrepancy(&mut record, options);
    Ok(record)
}

/// Fixed points of a ball from two marked points photographed before
/// (`x`, `y`) and after (`xp`, `yp`) the motion.
pub fn run_baseball(pairs: &SpherePairs, options: &RunOptions) -> Result<SolutionRecord, CliError> {
    let mut record = sphere_recover(pairs, options, true)?;
    flag_discrepancy(&mut record, options);
    Ok(record)
}

fn flag_discrepancy(record: &mut SolutionRecord, options: &RunOptions) {
    if let Some(d) = record.discrepancy {
        if d.is_nan() || d > options.tolerance {
            record.diagnostics.push(format!(
                "warning: algebraic and geometric routes disagree by {d:.3e} (tolerance {:.1e})",
                options.tolerance
            ));
        }
    }
}

fn check_residual(residual: f64, scale: f64) -> Result<f64, CliError> {
    if residual <= RESIDUAL_LIMIT * scale.max(1.0) {
        Ok(residual)
    } else {
        Err(CliError::Internal(format!(
            "solved isometry misses its inputs by {residual:.3e}"
        )))
    }
}

/// Bisector-based recovery: pivot from the bisector intersection, angle from
/// the turn of one endpoint about it.
fn geometric_planar(src: &Segment2d, dst: &Segment2d) -> Result<PlanarIsometryd, CliError> {
    check_lengths(src, dst)?;
    match recover_pivot_geometric(src, dst) {
        Ok(pivot) => {
            let far = if (src.a() - pivot).norm() >= (src.b() - pivot).norm() {
                (src.a(), dst.a())
            } else {
                (src.b(), dst.b())
            };
            let (u, w) = (far.0 - pivot, far.1 - pivot);
            let angle = u.perp_dot(w).atan2(u.dot(w));
            if angle.abs() < MIN_ROTATION_ANGLE {
                return Err(PlanarError::ParallelBisectors.into());
            }
            Ok(PlanarIsometryd::Rotation(Rotation2d::new(pivot, angle)))
        }
        Err(PlanarError::ParallelBisectors) => {
            let v = ((dst.a() - src.a()) + (dst.b() - src.b())) * 0.5;
            Ok(PlanarIsometryd::Translation(Translation2d::new(v)))
        }
        Err(PlanarError::DegenerateBisector) => Ok(PlanarIsometryd::Identity),
        Err(e) => Err(e.into()),
    }
}

/// Distance between two planar answers: pivot and angle difference for two
/// rotations, otherwise the largest pointwise gap on `probes`.
fn planar_discrepancy(a: &PlanarIsometryd, b: &PlanarIsometryd, probes: &[Vec2d]) -> f64 {
    match (a, b) {
        (PlanarIsometryd::Rotation(x), PlanarIsometryd::Rotation(y)) => {
            let pivot = (x.pivot - y.pivot).norm() / x.pivot.norm().max(1.0);
            pivot.max(angle_distance(x.angle, y.angle))
        }
        _ => probes
            .iter()
            .map(|p| (a.apply(*p) - b.apply(*p)).norm())
            .fold(0.0, f64::max),
    }
}

fn segment_scale(s: &Segment2d) -> f64 {
    s.a().max_abs().max(s.b().max_abs())
}

fn z0(v: Vec2d) -> Vec3d {
    Vec3d::new(v.x, v.y, 0.0)
}

fn plane_recover(
    src: &Segment2d,
    dst: &Segment2d,
    options: &RunOptions,
) -> Result<SolutionRecord, CliError> {
    let unit = options.angle_unit;
    let (primary, alternate) = match options.method {
        Method::Algebraic => (recover_planar(src, dst)?, None),
        Method::Geometric => (geometric_planar(src, dst)?, None),
        Method::Both => (recover_planar(src, dst)?, Some(geometric_planar(src, dst)?)),
    };
    let residual = [(src.a(), dst.a()), (src.b(), dst.b())]
        .iter()
        .map(|(p, q)| (primary.apply(*p) - *q).norm())
        .fold(0.0, f64::max);
    let scale = segment_scale(src).max(segment_scale(dst));
    let residual = check_residual(residual, scale)?;
    let probes = [src.a(), src.b(), dst.a(), dst.b()];
    let discrepancy = alternate.map(|alt| planar_discrepancy(&primary, &alt, &probes));

    let mut elements = vec![
        Element::Segment { from: z0(src.a()), to: z0(src.b()), role: Role::Source },
        Element::Segment { from: z0(dst.a()), to: z0(dst.b()), role: Role::Image },
    ];
    elements.extend(bisector_lines(&[(src.a(), dst.a()), (src.b(), dst.b())]));
    for (p, name) in [(src.a(), "X"), (src.b(), "Y")] {
        elements.push(Element::Point { at: z0(p), label: Some(name.into()), role: Role::Source });
    }
    for (p, name) in [(dst.a(), "X'"), (dst.b(), "Y'")] {
        elements.push(Element::Point { at: z0(p), label: Some(name.into()), role: Role::Image });
    }
    if let PlanarIsometryd::Rotation(r) = primary {
        elements.extend(pivot_with_arc(&r, src.a(), "P"));
    }

    Ok(SolutionRecord {
        result: plane_solution(&primary, unit),
        method: options.method,
        residual,
        discrepancy,
        geometric: alternate.map(|a| plane_solution(&a, unit)),
        diagnostics: vec![],
        figure: FigureSpec::planar(elements).with_title("Pivot from two perpendicular bisectors"),
    })
}

fn bisector_lines(pairs: &[(Vec2d, Vec2d)]) -> Vec<Element> {
    pairs
        .iter()
        .filter(|(a, b)| (*b - *a).norm() > 1e-12)
        .map(|(a, b)| Element::Line {
            through: z0((*a + *b) * 0.5),
            direction: z0((*b - *a).perp()),
            role: Role::Bisector,
        })
        .collect()
}

fn pivot_with_arc(r: &Rotation2d, from: Vec2d, name: &str) -> Vec<Element> {
    let u = from - r.pivot;
    let radius = (0.25 * u.norm()).max(0.05);
    vec![
        Element::Point { at: z0(r.pivot), label: Some(name.into()), role: Role::Pivot },
        Element::AngleArc {
            center: z0(r.pivot),
            radius,
            start: u.y.atan2(u.x),
            sweep: r.angle,
            role: Role::Construction,
        },
    ]
}

fn plane_compose(
    outer: Rotation2d,
    inner: Rotation2d,
    options: &RunOptions,
) -> Result<SolutionRecord, CliError> {
    let unit = options.angle_unit;
    let (g, h) = (outer.pivot, inner.pivot);
    let sequential = |p: Vec2d| outer.apply(inner.apply(p));

    // probe segment for the construction, scaled to the configuration
    let s = 1.0 + (g - h).norm();
    let probe = Segment2d::new(h + Vec2d::new(s, 0.0), h + Vec2d::new(0.0, s))?;
    let mid = probe.map_with(|p| inner.apply(p))?;
    let image = probe.map_with(sequential)?;

    let algebraic = compose_rotations_planar(&outer, &inner);
    let (primary, alternate) = match options.method {
        Method::Algebraic => (algebraic, None),
        Method::Geometric => (geometric_planar(&probe, &image)?, None),
        Method::Both => (algebraic, Some(geometric_planar(&probe, &image)?)),
    };

    let probes = [Vec2d::zero(), Vec2d::new(1.0, 0.0), Vec2d::new(0.0, 1.0), g, h];
    let residual = probes
        .iter()
        .map(|p| (primary.apply(*p) - sequential(*p)).norm())
        .fold(0.0, f64::max);
    let residual = check_residual(residual, g.max_abs().max(h.max_abs()))?;
    let discrepancy = alternate.map(|alt| planar_discrepancy(&primary, &alt, &probes));

    let mut diagnostics = vec![];
    if angle_distance(outer.angle + inner.angle, 0.0) < MIN_ROTATION_ANGLE {
        let naive = g + h;
        let naive_err = probes
            .iter()
            .map(|p| (*p + naive - sequential(*p)).norm())
            .fold(0.0, f64::max);
        let v = match algebraic {
            PlanarIsometryd::Translation(t) => t.v,
            _ => Vec2d::zero(),
        };
        let mut note = format!(
            "erratum: angles cancel, so the composite is the translation (I - R_alpha)(G - H) = ({:.10}, {:.10})",
            v.x, v.y
        );
        if naive_err > 1e-9 * (1.0 + naive.norm()) {
            note.push_str(&format!(
                "; the shortcut V = G + H = ({:.10}, {:.10}) misses the sequential map by {naive_err:.3e}",
                naive.x, naive.y
            ));
        }
        diagnostics.push(note);
    }

    let mut elements = vec![
        Element::Segment { from: z0(probe.a()), to: z0(probe.b()), role: Role::Source },
        Element::Segment { from: z0(mid.a()), to: z0(mid.b()), role: Role::Image },
        Element::Segment { from: z0(image.a()), to: z0(image.b()), role: Role::SecondImage },
    ];
    elements.extend(bisector_lines(&[(probe.a(), image.a()), (probe.b(), image.b())]));
    elements.push(Element::Point { at: z0(g), label: Some("G".into()), role: Role::Construction });
    elements.push(Element::Point { at: z0(h), label: Some("H".into()), role: Role::Construction });
    for (p, name, role) in [
        (probe.a(), "X", Role::Source),
        (probe.b(), "Y", Role::Source),
        (mid.a(), "X'", Role::Image),
        (mid.b(), "Y'", Role::Image),
        (image.a(), "X''", Role::SecondImage),
        (image.b(), "Y''", Role::SecondImage),
    ] {
        elements.push(Element::Point { at: z0(p), label: Some(name.into()), role });
    }
    if let PlanarIsometryd::Rotation(r) = primary {
        elements.extend(pivot_with_arc(&r, probe.a(), "P"));
    }

    Ok(SolutionRecord {
        result: plane_solution(&primary, unit),
        method: options.method,
        residual,
        discrepancy,
        geometric: alternate.map(|a| plane_solution(&a, unit)),
        diagnostics,
        figure: FigureSpec::planar(elements).with_title("Composition of two rotations"),
    })
}

fn line_record(r: &Reflection2d, unit: AngleUnit) -> LineRecord {
    LineRecord {
        point: arr2(r.line.point()),
        direction: arr2(r.line.direction()),
        angle: unit.from_radians(r.line.angle()),
    }
}

fn plane_reflections(rot: Rotation2d, options: &RunOptions) -> Result<SolutionRecord, CliError> {
    let unit = options.angle_unit;
    let (first, second) = reflections_for_rotation(&rot)?;
    let p = rot.pivot;
    let probes = [
        Vec2d::zero(),
        p + Vec2d::new(1.0, 0.0),
        p + Vec2d::new(0.0, 1.0),
        p + Vec2d::new(-2.0, 3.0),
    ];
    let residual = probes
        .iter()
        .map(|q| (second.apply(first.apply(*q)) - rot.apply(*q)).norm())
        .fold(0.0, f64::max);
    let residual = check_residual(residual, p.max_abs())?;
    let discrepancy = (options.method == Method::Both).then(|| {
        planar_discrepancy(
            &compose_reflections(&first, &second),
            &PlanarIsometryd::Rotation(rot),
            &probes,
        )
    });

    let reach = 1.0;
    let elements = vec![
        Element::Line { through: z0(p), direction: z0(first.line.direction()), role: Role::Reflector },
        Element::Line { through: z0(p), direction: z0(second.line.direction()), role: Role::Reflector },
        Element::AngleArc {
            center: z0(p),
            radius: 0.5 * reach,
            start: 0.0,
            sweep: rot.angle / 2.0,
            role: Role::Construction,
        },
        Element::Point { at: z0(p), label: Some("P".into()), role: Role::Pivot },
        Element::Point {
            at: z0(p + Vec2d::new(reach, reach)),
            label: None,
            role: Role::Construction,
        },
        Element::Point {
            at: z0(p - Vec2d::new(reach, reach)),
            label: None,
            role: Role::Construction,
        },
    ];

    Ok(SolutionRecord {
        result: Solution::Reflections {
            pivot: arr2(p),
            angle: unit.from_radians(rot.angle),
            first: line_record(&first, unit),
            second: line_record(&second, unit),
        },
        method: options.method,
        residual,
        discrepancy,
        geometric: None,
        diagnostics: vec![],
        figure: FigureSpec::planar(elements).with_title("Two reflections make a rotation"),
    })
}

fn sphere_residual(r: &Rotation3d, pairs: &[(UnitVector3d, UnitVector3d)]) -> f64 {
    pairs
        .iter()
        .map(|(p, q)| (r.apply(*p).vec() - q.vec()).max_abs())
        .fold(0.0, f64::max)
}

fn rotation_gap(a: &Rotation3d, b: &Rotation3d) -> f64 {
    a.matrix().mat().sub_mat(b.matrix().mat()).max_abs()
}

fn recover_or_identity(
    method: AxisMethod,
    p: &SpherePairs,
) -> Result<Rotation3d, SphereError> {
    match recover_sphere_rotation_with(method, p.x, p.xp, p.y, p.yp) {
        Err(SphereError::IdentityCorrespondence) => Ok(Rotation3d::identity()),
        other => other,
    }
}

fn arcsin_note(r: &Rotation3d, from: UnitVector3d, to: UnitVector3d, tol: f64) -> Option<String> {
    if r.angle() == 0.0 {
        return None;
    }
    let naive = chord_arcsin_angle(from, to);
    ((naive - r.angle()).abs() > tol).then(|| {
        format!(
            "erratum: arcsin(|X x X'|) gives {naive:.10} rad, but the rotation angle about the axis is {:.10} rad; \
             the arcsin form holds only for points on the rotation's equator turned by at most pi/2",
            r.angle()
        )
    })
}

fn sphere_recover(
    pairs: &SpherePairs,
    options: &RunOptions,
    baseball: bool,
) -> Result<SolutionRecord, CliError> {
    let unit = options.angle_unit;
    let mut unavailable = None;
    let (primary, alternate) = match options.method {
        Method::Algebraic => (recover_or_identity(AxisMethod::CrossProduct, pairs)?, None),
        Method::Geometric => (recover_or_identity(AxisMethod::Bisector, pairs)?, None),
        Method::Both => {
            let primary = recover_or_identity(AxisMethod::CrossProduct, pairs)?;
            match recover_or_identity(AxisMethod::Bisector, pairs) {
                Ok(alt) => (primary, Some(alt)),
                // e.g. a half-turn sends a marked point to its antipode
                Err(e @ (SphereError::AntipodalPoints | SphereError::IdenticalCircles)) => {
                    unavailable = Some(format!("geometric route unavailable: {e}; no discrepancy computed"));
                    (primary, None)
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    let pts = [(pairs.x, pairs.xp), (pairs.y, pairs.yp)];
    let residual = check_residual(sphere_residual(&primary, &pts), 1.0)?;
    let discrepancy = alternate.map(|alt| rotation_gap(&primary, &alt));
    let diagnostics = unavailable
        .into_iter()
        .chain(arcsin_note(&primary, pairs.x, pairs.xp, options.tolerance.max(1e-9)))
        .collect();

    let mut elements = vec![
        Element::Segment { from: pairs.x.vec(), to: pairs.y.vec(), role: Role::Source },
        Element::Segment { from: pairs.xp.vec(), to: pairs.yp.vec(), role: Role::Image },
    ];
    for (a, b) in pts {
        if (a.vec() - b.vec()).norm() > 1e-12 {
            elements.push(Element::GreatCircle { normal: a.vec() - b.vec(), role: Role::Bisector });
        }
    }
    for (p, name, role) in [
        (pairs.x, "X", Role::Source),
        (pairs.y, "Y", Role::Source),
        (pairs.xp, "X'", Role::Image),
        (pairs.yp, "Y'", Role::Image),
    ] {
        elements.push(Element::Point { at: p.vec(), label: Some(name.into()), role });
    }
    if primary.angle() != 0.0 {
        elements.extend(axis_markers(&primary));
    }
    let title = if baseball {
        "Fixed points of the ball"
    } else {
        "Rotation axis from two bisector great circles"
    };

    Ok(SolutionRecord {
        result: sphere_solution(&primary, None, unit),
        method: options.method,
        residual,
        discrepancy,
        geometric: alternate.map(|a| sphere_solution(&a, None, unit)),
        diagnostics,
        figure: FigureSpec::sphere(elements, options.view).with_title(title),
    })
}

fn axis_markers(r: &Rotation3d) -> Vec<Element> {
    let p = r.axis().vec();
    vec![
        Element::Point { at: p, label: Some("P".into()), role: Role::Pivot },
        Element::Point { at: -p, label: Some("P'".into()), role: Role::Pivot },
    ]
}

/// Probe pair whose chords under `map` are best conditioned for the
/// bisector construction, or `None` if nothing moves.
fn choose_probe_pair(
    map: impl Fn(UnitVector3d) -> UnitVector3d,
) -> Option<(UnitVector3d, UnitVector3d)> {
    let candidates: Vec<UnitVector3d> = [
        Vec3d::unit_x(),
        Vec3d::unit_y(),
        Vec3d::unit_z(),
        Vec3d::new(1.0, 1.0, 1.0),
        Vec3d::new(1.0, -1.0, 0.5),
        Vec3d::new(-0.5, 1.0, -1.0),
    ]
    .into_iter()
    .filter_map(UnitVector3d::normalize)
    .collect();
    let mut best: Option<(f64, (UnitVector3d, UnitVector3d))> = None;
    for (i, a) in candidates.iter().enumerate() {
        for b in &candidates[i + 1..] {
            let ca = a.vec() - map(*a).vec();
            let cb = b.vec() - map(*b).vec();
            let lens = ca.norm() * cb.norm();
            if lens < 1e-18 {
                continue;
            }
            let score = ca.cross(cb).norm() / lens * lens.sqrt().min(1.0);
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, (*a, *b)));
            }
        }
    }
    best.filter(|(s, _)| *s > 1e-12).map(|(_, pair)| pair)
}

fn sphere_compose(
    outer: Rotation3d,
    inner: Rotation3d,
    options: &RunOptions,
) -> Result<SolutionRecord, CliError> {
    let unit = options.angle_unit;
    let sequential = |p: UnitVector3d| outer.apply(inner.apply(p));

    let decomposed = compose_sphere_rotations_decomposed(&outer, &inner);
    let eigen = decomposed.eigen.map(|e| EigenRecord {
        real_eigenvalue: e.lambda_real,
        complex_pair: [e.complex_pair.0, e.complex_pair.1],
    });
    let geometric = || -> Result<(Rotation3d, Option<(UnitVector3d, UnitVector3d)>), CliError> {
        match choose_probe_pair(sequential) {
            None => Ok((Rotation3d::identity(), None)),
            Some((x, y)) => {
                let r = recover_sphere_rotation_with(
                    AxisMethod::Bisector,
                    x,
                    sequential(x),
                    y,
                    sequential(y),
                )?;
                Ok((r, Some((x, y))))
            }
        }
    };
    let (primary, primary_eigen, alternate, probe) = match options.method {
        Method::Algebraic => (decomposed.rotation, eigen, None, None),
        Method::Geometric => {
            let (r, probe) = geometric()?;
            (r, None, None, probe)
        }
        Method::Both => {
            let (r, probe) = geometric()?;
            (decomposed.rotation, eigen, Some(r), probe)
        }
    };

    let probes: Vec<UnitVector3d> = vec![
        UnitVector3d::x(),
        UnitVector3d::y(),
        UnitVector3d::z(),
        outer.axis(),
        inner.axis(),
    ];
    let pairs: Vec<_> = probes.iter().map(|p| (*p, sequential(*p))).collect();
    let residual = check_residual(sphere_residual(&primary, &pairs), 1.0)?;
    let discrepancy = alternate.map(|alt| rotation_gap(&primary, &alt));

    let mut diagnostics = vec![];
    let sum = outer.angle() + inner.angle();
    if primary.angle() != 0.0 && angle_distance(primary.angle(), sum) > 1e-6 {
        diagnostics.push(format!(
            "composite angle {:.10} rad differs from alpha + beta = {sum:.10} rad: rotations about different axes do not add",
            primary.angle()
        ));
    }

    let mut elements = vec![
        Element::Point { at: outer.axis().vec(), label: Some("G".into()), role: Role::Construction },
        Element::Point { at: inner.axis().vec(), label: Some("H".into()), role: Role::Construction },
    ];
    if let Some((x, y)) = probe {
        let (xm, ym) = (inner.apply(x), inner.apply(y));
        let (xi, yi) = (sequential(x), sequential(y));
        elements.push(Element::Segment { from: x.vec(), to: y.vec(), role: Role::Source });
        elements.push(Element::Segment { from: xm.vec(), to: ym.vec(), role: Role::Image });
        elements.push(Element::Segment { from: xi.vec(), to: yi.vec(), role: Role::SecondImage });
        elements.push(Element::GreatCircle { normal: x.vec() - xi.vec(), role: Role::Bisector });
        elements.push(Element::GreatCircle { normal: y.vec() - yi.vec(), role: Role::Bisector });
    }
    if primary.angle() != 0.0 {
        elements.extend(axis_markers(&primary));
    }

    Ok(SolutionRecord {
        result: sphere_solution(&primary, primary_eigen, unit),
        method: options.method,
        residual,
        discrepancy,
        geometric: alternate.map(|a| sphere_solution(&a, None, unit)),
        diagnostics,
        figure: FigureSpec::sphere(elements, options.view).with_title("Composition of two sphere rotations"),
    })
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn run_text(text: &str, method: Method) -> Result<SolutionRecord, CliError> {
        let inst = parse_instance(text.as_bytes())?;
        run(&inst, &RunOptions { method, ..RunOptions::default() })
    }

    #[test]
    fn plane_compose_example() {
        let text = format!(
            r#"{{"kind":"plane_compose","G":[0,0],"alpha":{},"H":[1,0],"beta":{}}}"#,
            FRAC_PI_4, FRAC_PI_2
        );
        let rec = run_text(&text, Method::Both).unwrap();
        match rec.result {
            Solution::Rotation { pivot, angle } => {
                assert!((pivot[0] - 0.7071).abs() < 1e-4);
                assert!((pivot[1] - 0.2929).abs() < 1e-4);
                assert!((angle - 2.3562).abs() < 1e-4);
            }
            other => panic!("{other:?}"),
        }
        assert!(rec.discrepancy.unwrap() < 1e-9);
        assert!(rec.residual < 1e-12);
    }

    #[test]
    fn sphere_compose_example() {
        let text = format!(
            r#"{{"kind":"sphere_compose","G":[0,1,0],"alpha":{},"H":[0,0,1],"beta":{}}}"#,
            FRAC_PI_4, FRAC_PI_6
        );
        let rec = run_text(&text, Method::Both).unwrap();
        match rec.result {
            Solution::SphereRotation { angle, eigen, .. } => {
                assert!((angle - 0.9363).abs() < 1e-3);
                let e = eigen.unwrap();
                assert!((e.complex_pair[0] - 0.5927).abs() < 1e-3);
            }
            other => panic!("{other:?}"),
        }
        assert!(rec.discrepancy.unwrap() < 1e-9);
        assert!(rec.diagnostics.iter().any(|d| d.contains("do not add")));
    }

    #[test]
    fn identity_correspondences() {
        let plane = r#"{"kind":"plane_recover","X":[1,0],"Y":[2,0],"Xp":[1,0],"Yp":[2,0]}"#;
        for m in [Method::Algebraic, Method::Geometric, Method::Both] {
            let rec = run_text(plane, m).unwrap();
            assert_eq!(rec.result, Solution::Identity { fixed_points: None });
            assert_eq!(rec.residual, 0.0);
        }
        let ball = r#"{"kind":"baseball","X":[1,0,0],"Y":[0,1,0],"Xp":[1,0,0],"Yp":[0,1,0]}"#;
        let rec = run_text(ball, Method::Both).unwrap();
        assert_eq!(rec.result, Solution::Identity { fixed_points: Some("all") });
        assert_eq!(rec.residual, 0.0);
    }

    #[test]
    fn plane_translation_both_routes() {
        let text = r#"{"kind":"plane_recover","X":[0,0],"Y":[1,0],"Xp":[2,3],"Yp":[3,3]}"#;
        let rec = run_text(text, Method::Both).unwrap();
        assert!(matches!(rec.result, Solution::Translation { .. }));
        assert!(matches!(rec.geometric, Some(Solution::Translation { .. })));
        assert!(rec.discrepancy.unwrap() < 1e-12);
    }

    #[test]
    fn cancelling_angles_note_erratum() {
        let text = format!(
            r#"{{"kind":"plane_compose","G":[0,0],"alpha":{},"H":[1,0],"beta":{}}}"#,
            FRAC_PI_2, -FRAC_PI_2
        );
        let rec = run_text(&text, Method::Both).unwrap();
        assert!(matches!(rec.result, Solution::Translation { .. }));
        assert!(rec.diagnostics.iter().any(|d| d.contains("G + H")));
    }

    #[test]
    fn half_turn_notes_arcsin_erratum() {
        let text = r#"{"kind":"sphere_recover","X":[1,0,0],"Y":[0,0.6,0.8],"Xp":[-1,0,0],"Yp":[0,-0.6,0.8]}"#;
        let rec = run_text(text, Method::Both).unwrap();
        match rec.result {
            Solution::SphereRotation { angle, .. } => assert!((angle - PI).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert!(rec.diagnostics.iter().any(|d| d.contains("arcsin")));
    }

    #[test]
    fn reflections_record() {
        let rec = run_text(r#"{"kind":"plane_reflections","P":[2,5],"theta":3.14159}"#, Method::Both).unwrap();
        match rec.result {
            Solution::Reflections { first, second, .. } => {
                assert_eq!(first.point, [2.0, 5.0]);
                assert!((second.angle - 3.14159 / 2.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert!(rec.residual < 1e-12);
        let zero = run_text(r#"{"kind":"plane_reflections","P":[2,5],"theta":0}"#, Method::Both);
        assert_eq!(zero.unwrap_err().exit_code(), 4);
    }

    #[test]
    fn baseball_length_mismatch() {
        // X·Y angular length pi/2 before, pi/2 - 0.1 after
        let a = FRAC_PI_2 - 0.1;
        let text = format!(
            r#"{{"kind":"baseball","X":[1,0,0],"Y":[0,1,0],"Xp":[1,0,0],"Yp":[{},{},0]}}"#,
            a.cos(),
            a.sin()
        );
        let err = run_text(&text, Method::Both).unwrap_err();
        assert_eq!(err.code(), "LengthMismatch");
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn degrees_output() {
        let inst = parse_instance(br#"{"kind":"plane_reflections","P":[0,0],"theta":1.5707963267948966}"#).unwrap();
        let opts = RunOptions { angle_unit: AngleUnit::Degrees, ..RunOptions::default() };
        match run(&inst, &opts).unwrap().result {
            Solution::Reflections { angle, second, .. } => {
                assert!((angle - 90.0).abs() < 1e-12);
                assert!((second.angle - 45.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_rounds_to_ten_digits_but_keeps_residual() {
        let rec = run_text(
            r#"{"kind":"plane_reflections","P":[0.123456789012345,0],"theta":1}"#,
            Method::Algebraic,
        )
        .unwrap();
        let v = rec.to_json();
        assert_eq!(v["result"]["pivot"][0].as_f64().unwrap(), 0.123456789);
        assert_eq!(v["residual"].as_f64().unwrap(), rec.residual);
        assert_eq!(v["method"], "algebraic");
    }
}
