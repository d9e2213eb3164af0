//! Scene description and SVG rendering for solution figures.
//!
//! Planar scenes are drawn directly (y axis up). Sphere scenes use an
//! orthographic projection along a view direction; anything on the far
//! hemisphere is drawn dashed.

use std::fmt::Write;

use isometry_core::{GreatCircled, UnitVector3d, Vec3d};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Source,
    Image,
    SecondImage,
    Bisector,
    Pivot,
    Reflector,
    Construction,
}

impl Role {
    fn class(self) -> &'static str {
        match self {
            Role::Source => "source",
            Role::Image => "image",
            Role::SecondImage => "second-image",
            Role::Bisector => "bisector",
            Role::Pivot => "pivot",
            Role::Reflector => "reflector",
            Role::Construction => "construction",
        }
    }

    fn color(self) -> &'static str {
        match self {
            Role::Source => "#1f4e9c",
            Role::Image => "#c0392b",
            Role::SecondImage => "#7d3c98",
            Role::Bisector => "#27864a",
            Role::Pivot => "#000000",
            Role::Reflector => "#b9770e",
            Role::Construction => "#7f8c8d",
        }
    }
}

/// Scene element. Planar scenes use `x, y` and ignore `z`.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Point {
        at: Vec3d,
        label: Option<String>,
        role: Role,
    },
    /// Straight segment in the plane; great-circle arc on the sphere.
    Segment { from: Vec3d, to: Vec3d, role: Role },
    /// Infinite planar line, clipped to the viewport.
    Line {
        through: Vec3d,
        direction: Vec3d,
        role: Role,
    },
    GreatCircle { normal: Vec3d, role: Role },
    /// Planar circular arc from `start` sweeping `sweep` radians CCW.
    AngleArc {
        center: Vec3d,
        radius: f64,
        start: f64,
        sweep: f64,
        role: Role,
    },
    Label { at: Vec3d, text: String },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Projection {
    /// World window `[min_x, max_x] × [min_y, max_y]`.
    Planar {
        min_x: f64,
        min_y: f64,
        max_x: f64,
        max_y: f64,
    },
    /// `view` points from the sphere toward the viewer.
    OrthographicSphere { view: Vec3d },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub title: Option<String>,
    /// Pixel size of the output.
    pub width: f64,
    pub height: f64,
    pub projection: Projection,
    pub elements: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FigureError {
    #[error("viewport must have positive finite size")]
    BadViewport,
    #[error("element {0} has a non-finite coordinate")]
    NonFinite(usize),
}

impl FigureSpec {
    pub fn planar(elements: Vec<Element>) -> Self {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for e in &elements {
            for p in anchor_points(e) {
                lo = [lo[0].min(p.x), lo[1].min(p.y)];
                hi = [hi[0].max(p.x), hi[1].max(p.y)];
            }
        }
        if !lo[0].is_finite() {
            lo = [-1.0, -1.0];
            hi = [1.0, 1.0];
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0);
        let pad = 0.2 * span;
        let (cx, cy) = ((lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0);
        let half = span / 2.0 + pad;
        Self {
            title: None,
            width: 480.0,
            height: 480.0,
            projection: Projection::Planar {
                min_x: cx - half,
                min_y: cy - half,
                max_x: cx + half,
                max_y: cy + half,
            },
            elements,
        }
    }

    pub fn sphere(elements: Vec<Element>, view: Vec3d) -> Self {
        Self {
            title: None,
            width: 480.0,
            height: 480.0,
            projection: Projection::OrthographicSphere { view },
            elements,
        }
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }
}

fn anchor_points(e: &Element) -> Vec<Vec3d> {
    match e {
        Element::Point { at, .. } | Element::Label { at, .. } => vec![*at],
        Element::Segment { from, to, .. } => vec![*from, *to],
        Element::Line { through, .. } => vec![*through],
        Element::AngleArc {
            center, radius, ..
        } => vec![
            *center + Vec3d::new(*radius, *radius, 0.0),
            *center - Vec3d::new(*radius, *radius, 0.0),
        ],
        Element::GreatCircle { .. } => vec![],
    }
}

fn element_vectors(e: &Element) -> Vec<Vec3d> {
    match e {
        Element::Line {
            through, direction, ..
        } => vec![*through, *direction],
        Element::GreatCircle { normal, .. } => vec![*normal],
        Element::AngleArc {
            center,
            radius,
            start,
            sweep,
            ..
        } => vec![*center, Vec3d::new(*radius, *start, *sweep)],
        other => anchor_points(other),
    }
}

struct Mapper {
    projection: Projection,
    width: f64,
    height: f64,
    right: Vec3d,
    up: Vec3d,
    view: Vec3d,
}

impl Mapper {
    fn new(spec: &FigureSpec) -> Self {
        let (right, up, view) = match spec.projection {
            Projection::OrthographicSphere { view } => {
                let v = view.normalized().unwrap_or(Vec3d::unit_z());
                let basis = GreatCircled::new(UnitVector3d::normalize(v).unwrap()).basis();
                // keep +x to the right when viewing down +z
                let (r, u) = if v == Vec3d::unit_z() {
                    (Vec3d::unit_x(), Vec3d::unit_y())
                } else {
                    basis
                };
                (r, u, v)
            }
            Projection::Planar { .. } => (Vec3d::unit_x(), Vec3d::unit_y(), Vec3d::unit_z()),
        };
        Self {
            projection: spec.projection,
            width: spec.width,
            height: spec.height,
            right,
            up,
            view,
        }
    }

    fn window(&self) -> (f64, f64, f64, f64) {
        match self.projection {
            Projection::Planar {
                min_x,
                min_y,
                max_x,
                max_y,
            } => (min_x, min_y, max_x, max_y),
            Projection::OrthographicSphere { .. } => (-1.2, -1.2, 1.2, 1.2),
        }
    }

    fn to_screen(&self, p: Vec3d) -> (f64, f64) {
        let (wx, wy) = match self.projection {
            Projection::Planar { .. } => (p.x, p.y),
            Projection::OrthographicSphere { .. } => (p.dot(self.right), p.dot(self.up)),
        };
        let (x0, y0, x1, y1) = self.window();
        let sx = (wx - x0) / (x1 - x0) * self.width;
        let sy = (y1 - wy) / (y1 - y0) * self.height;
        (sx, sy)
    }

    fn length_to_screen(&self, r: f64) -> f64 {
        let (x0, _, x1, _) = self.window();
        r / (x1 - x0) * self.width
    }

    fn front(&self, p: Vec3d) -> bool {
        p.dot(self.view) >= -1e-12
    }
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn polyline(out: &mut String, pts: &[(f64, f64)], role: Role, dashed: bool) {
    if pts.len() < 2 {
        return;
    }
    let coords: Vec<String> = pts
        .iter()
        .map(|(x, y)| format!("{},{}", fmt(*x), fmt(*y)))
        .collect();
    let dash = if dashed { r#" stroke-dasharray="4 3""# } else { "" };
    let _ = writeln!(
        out,
        r#"  <polyline class="{}" points="{}" fill="none" stroke="{}" stroke-width="1.5"{}/>"#,
        role.class(),
        coords.join(" "),
        role.color(),
        dash
    );
}

/// Splits a sampled sphere curve into front/back runs and draws each.
fn sphere_curve(out: &mut String, m: &Mapper, pts: &[Vec3d], role: Role) {
    let mut run: Vec<(f64, f64)> = Vec::new();
    let mut run_front = None;
    for p in pts {
        let f = m.front(*p);
        if run_front.is_some_and(|rf| rf != f) {
            let last = *run.last().unwrap();
            polyline(out, &run, role, run_front == Some(false));
            run = vec![last];
        }
        run_front = Some(f);
        run.push(m.to_screen(*p));
    }
    polyline(out, &run, role, run_front == Some(false));
}

fn slerp(a: Vec3d, b: Vec3d, n: usize) -> Vec<Vec3d> {
    let angle = a.cross(b).norm().atan2(a.dot(b));
    (0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            if angle < 1e-12 {
                return a;
            }
            let s = angle.sin();
            a.scale(((1.0 - t) * angle).sin() / s) + b.scale((t * angle).sin() / s)
        })
        .collect()
}

/// Clips the line `p + t d` to the axis-aligned window.
fn clip_line(p: Vec3d, d: Vec3d, window: (f64, f64, f64, f64)) -> Option<(Vec3d, Vec3d)> {
    let (x0, y0, x1, y1) = window;
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (pc, dc, lo, hi) in [(p.x, d.x, x0, x1), (p.y, d.y, y0, y1)] {
        if dc.abs() < 1e-15 {
            if pc < lo || pc > hi {
                return None;
            }
        } else {
            let (a, b) = ((lo - pc) / dc, (hi - pc) / dc);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
    }
    (t0 <= t1).then(|| (p + d.scale(t0), p + d.scale(t1)))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders `spec` as a standalone SVG 1.1 document.
pub fn render_svg(spec: &FigureSpec) -> Result<String, FigureError> {
    if !(spec.width > 0.0 && spec.height > 0.0 && spec.width.is_finite() && spec.height.is_finite()) {
        return Err(FigureError::BadViewport);
    }
    if let Projection::Planar {
        min_x,
        min_y,
        max_x,
        max_y,
    } = spec.projection
    {
        if !(max_x > min_x && max_y > min_y) {
            return Err(FigureError::BadViewport);
        }
    }
    for (i, e) in spec.elements.iter().enumerate() {
        if !element_vectors(e).iter().all(|v| v.is_finite()) {
            return Err(FigureError::NonFinite(i));
        }
    }

    let m = Mapper::new(spec);
    let sphere = matches!(spec.projection, Projection::OrthographicSphere { .. });
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = fmt(spec.width),
        h = fmt(spec.height)
    );
    if let Some(t) = &spec.title {
        let _ = writeln!(out, "  <title>{}</title>", escape(t));
    }
    let _ = writeln!(
        out,
        r##"  <rect class="background" x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        fmt(spec.width),
        fmt(spec.height)
    );
    if sphere {
        let (cx, cy) = m.to_screen(Vec3d::zero());
        let _ = writeln!(
            out,
            r##"  <circle class="outline" cx="{}" cy="{}" r="{}" fill="none" stroke="#444444" stroke-width="1"/>"##,
            fmt(cx),
            fmt(cy),
            fmt(m.length_to_screen(1.0))
        );
    }

    for e in &spec.elements {
        match e {
            Element::Point { at, label, role } => {
                let (x, y) = m.to_screen(*at);
                let hidden = sphere && !m.front(*at);
                let fill = if hidden { "none" } else { role.color() };
                let r = if *role == Role::Pivot { 4.5 } else { 3.5 };
                let _ = writeln!(
                    out,
                    r#"  <circle class="point {}" cx="{}" cy="{}" r="{}" fill="{}" stroke="{}"/>"#,
                    role.class(),
                    fmt(x),
                    fmt(y),
                    r,
                    fill,
                    role.color()
                );
                if let Some(text) = label {
                    label_at(&mut out, x + 6.0, y - 6.0, text);
                }
            }
            Element::Label { at, text } => {
                let (x, y) = m.to_screen(*at);
                label_at(&mut out, x, y, text);
            }
            Element::Segment { from, to, role } => {
                if sphere {
                    let (a, b) = (
                        from.normalized().unwrap_or(*from),
                        to.normalized().unwrap_or(*to),
                    );
                    sphere_curve(&mut out, &m, &slerp(a, b, 48), *role);
                } else {
                    polyline(&mut out, &[m.to_screen(*from), m.to_screen(*to)], *role, false);
                }
            }
            Element::Line {
                through,
                direction,
                role,
            } => {
                if let Some((a, b)) = clip_line(*through, *direction, m.window()) {
                    polyline(&mut out, &[m.to_screen(a), m.to_screen(b)], *role, false);
                }
            }
            Element::GreatCircle { normal, role } => {
                if let Some(n) = UnitVector3d::normalize(*normal) {
                    let c = GreatCircled::new(n);
                    let mut pts: Vec<Vec3d> = c.sample(180).iter().map(|p| p.vec()).collect();
                    pts.push(pts[0]);
                    // one group per circle, since it may split into front and back runs
                    let _ = writeln!(out, r#"  <g class="great-circle {}">"#, role.class());
                    sphere_curve(&mut out, &m, &pts, *role);
                    out.push_str("  </g>\n");
                }
            }
            Element::AngleArc {
                center,
                radius,
                start,
                sweep,
                role,
            } => {
                let n = 32;
                let pts: Vec<(f64, f64)> = (0..=n)
                    .map(|i| {
                        let a = start + sweep * i as f64 / n as f64;
                        m.to_screen(*center + Vec3d::new(a.cos(), a.sin(), 0.0).scale(*radius))
                    })
                    .collect();
                polyline(&mut out, &pts, *role, false);
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn label_at(out: &mut String, x: f64, y: f64, text: &str) {
    let _ = writeln!(
        out,
        r##"  <text class="label" x="{}" y="{}" font-family="sans-serif" font-size="12" fill="#222222">{}</text>"##,
        fmt(x),
        fmt(y),
        escape(text)
    );
}
