//! Deterministic SVG figures.
//!
//! World coordinates are mapped to a fixed-width viewport with y pointing
//! up. Numbers are written with at most nine significant digits and
//! elements are emitted in a fixed order, so identical scenes give
//! byte-identical documents.

use std::f64::consts::{PI, TAU};
use std::fmt::{self, Write};
use std::str::FromStr;

use miquel_core::brocard::brocard_data;
use miquel_core::centers::{center_case, classic_center};
use miquel_core::geom::{tangent_line_at, Circle, Line};
use miquel_core::locus::auxiliary_data;
use miquel_core::miquel::{forward_miquel, inverse_miquel};
use miquel_core::special::{isogonal_circle, isogonal_image_line, vertex_line, IsogonalFit};
use miquel_core::symmedian::{omega_tan, tangent_intersection};
use miquel_core::{Error, MiquelConfiguration, Point, Vertex};

use crate::format::sig;
use crate::scene::{Payload, Scene};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureKind {
    Construction,
    Locus,
    Axis,
    Brocard,
    OmegaTan,
    Center,
    Isogonal,
}

impl FigureKind {
    pub const ALL: [FigureKind; 7] = [
        FigureKind::Construction,
        FigureKind::Locus,
        FigureKind::Axis,
        FigureKind::Brocard,
        FigureKind::OmegaTan,
        FigureKind::Center,
        FigureKind::Isogonal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureKind::Construction => "construction",
            FigureKind::Locus => "locus",
            FigureKind::Axis => "axis",
            FigureKind::Brocard => "brocard",
            FigureKind::OmegaTan => "omega-tan",
            FigureKind::Center => "center",
            FigureKind::Isogonal => "isogonal",
        }
    }

    pub fn default_for(payload: &Payload) -> Self {
        match payload {
            Payload::Cevians(_) | Payload::Point(_) => FigureKind::Construction,
            Payload::Center(_) => FigureKind::Center,
            Payload::LineAngle(_) => FigureKind::Isogonal,
        }
    }
}

impl fmt::Display for FigureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FigureKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown figure `{s}`"))
    }
}

/// Why a figure could not be drawn.
#[derive(Debug, Clone, PartialEq)]
pub enum RenderError {
    Geometry(Error),
    /// The figure needs a payload the scene does not carry.
    PayloadMismatch { figure: FigureKind, needs: &'static str },
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::Geometry(e) => e.fmt(f),
            RenderError::PayloadMismatch { figure, needs } => write!(f, "PayloadMismatch({figure} needs {needs})"),
        }
    }
}

impl std::error::Error for RenderError {}

impl From<Error> for RenderError {
    fn from(e: Error) -> Self {
        RenderError::Geometry(e)
    }
}

type Result<T, E = RenderError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub figure: Option<FigureKind>,
    /// Width of the document in pixels.
    pub width: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            figure: None,
            width: 800.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Style {
    Main,
    Thin,
    Aux,
    Accent,
}

impl Style {
    fn attrs(self) -> &'static str {
        match self {
            Style::Main => r##"fill="none" stroke="#000000" stroke-width="1.5""##,
            Style::Thin => r##"fill="none" stroke="#808080" stroke-width="0.75""##,
            Style::Aux => r##"fill="none" stroke="#1f5fbf" stroke-width="1" stroke-dasharray="6 4""##,
            Style::Accent => r##"fill="none" stroke="#c0392b" stroke-width="1.25""##,
        }
    }
}

/// Boundary piece of a shaded region: an arc of `circle` ending at `to`,
/// taken on the side that does not pass through `avoid`.
#[derive(Debug, Clone, Copy)]
struct Arc {
    circle: Circle,
    to: Point,
    avoid: Point,
}

#[derive(Debug, Clone, Default)]
struct Figure {
    region: Option<(Point, Vec<Arc>)>,
    circles: Vec<(Circle, Style)>,
    lines: Vec<(Line, Style)>,
    segments: Vec<(Point, Point, Style)>,
    points: Vec<(Point, String)>,
}

impl Figure {
    fn triangle(&mut self, a: Point, b: Point, c: Point) {
        for (p, q) in [(a, b), (b, c), (c, a)] {
            self.segments.push((p, q, Style::Main));
        }
    }

    fn point(&mut self, p: Point, label: &str) {
        self.points.push((p, label.to_string()));
    }

    /// World bounding box of the points plus every circle no larger than a
    /// few triangle diameters.
    fn bounds(&self, diameter: f64) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |p: Point| {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        };
        for (p, _) in &self.points {
            grow(*p);
        }
        for (c, _) in &self.circles {
            if c.radius <= 2.0 * diameter {
                grow(c.center - Point::new(c.radius, c.radius));
                grow(c.center + Point::new(c.radius, c.radius));
            }
        }
        let pad = 0.08 * (hi.x - lo.x).max(hi.y - lo.y).max(diameter);
        (lo - Point::new(pad, pad), hi + Point::new(pad, pad))
    }
}

struct Viewport {
    lo: Point,
    hi: Point,
    scale: f64,
    height: f64,
}

impl Viewport {
    fn map(&self, p: Point) -> (String, String) {
        (sig((p.x - self.lo.x) * self.scale, 9), sig((self.hi.y - p.y) * self.scale, 9))
    }

    /// Part of `l` inside the world box, if any.
    fn clip(&self, l: &Line) -> Option<(Point, Point)> {
        let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
        let (o, d) = (l.anchor(), l.direction());
        for (oc, dc, lo, hi) in [(o.x, d.x, self.lo.x, self.hi.x), (o.y, d.y, self.lo.y, self.hi.y)] {
            if dc.abs() < 1e-300 {
                if oc < lo || oc > hi {
                    return None;
                }
                continue;
            }
            let (a, b) = ((lo - oc) / dc, (hi - oc) / dc);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
        (t0 < t1).then(|| (l.point_at(t0), l.point_at(t1)))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn arc_flags(arc: &Arc, from: Point) -> (u8, u8) {
    let c = arc.circle.center;
    let (s, e, a) = ((from - c).angle(), (arc.to - c).angle(), (arc.avoid - c).angle());
    let ccw_span = (e - s).rem_euclid(TAU);
    let ccw = (a - s).rem_euclid(TAU) >= ccw_span;
    let span = if ccw { ccw_span } else { TAU - ccw_span };
    // y is flipped on screen, so counter-clockwise in the world is sweep 0
    (u8::from(span > PI), u8::from(!ccw))
}

impl Figure {
    fn to_svg(&self, diameter: f64, width: f64) -> String {
        let (lo, hi) = self.bounds(diameter);
        let scale = width / (hi.x - lo.x);
        let vp = Viewport {
            lo,
            hi,
            scale,
            height: (hi.y - lo.y) * scale,
        };
        let mut out = String::new();
        let (w, h) = (sig(width, 9), sig(vp.height, 9));
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(out, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##);
        if let Some((start, arcs)) = &self.region {
            let (x, y) = vp.map(*start);
            let mut d = format!("M {x} {y}");
            let mut from = *start;
            for arc in arcs {
                let (large, sweep) = arc_flags(arc, from);
                let r = sig(arc.circle.radius * scale, 9);
                let (x, y) = vp.map(arc.to);
                let _ = write!(d, " A {r} {r} 0 {large} {sweep} {x} {y}");
                from = arc.to;
            }
            let _ = writeln!(out, r##"<path d="{d} Z" fill="#f5c542" fill-opacity="0.35" stroke="none"/>"##);
        }
        for (c, style) in &self.circles {
            let (x, y) = vp.map(c.center);
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{}" {}/>"#, sig(c.radius * scale, 9), style.attrs());
        }
        for (l, style) in &self.lines {
            if let Some((p, q)) = vp.clip(l) {
                let ((x1, y1), (x2, y2)) = (vp.map(p), vp.map(q));
                let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {}/>"#, style.attrs());
            }
        }
        for (p, q, style) in &self.segments {
            let ((x1, y1), (x2, y2)) = (vp.map(*p), vp.map(*q));
            let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {}/>"#, style.attrs());
        }
        for (p, label) in &self.points {
            let (x, y) = vp.map(*p);
            let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="3" fill="#000000"/>"##);
            let (tx, ty) = (sig((p.x - lo.x) * scale + 5.0, 9), sig((hi.y - p.y) * scale - 5.0, 9));
            let _ = writeln!(
                out,
                r#"<text x="{tx}" y="{ty}" font-family="sans-serif" font-size="14">{}</text>"#,
                escape(label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn configuration(scene: &Scene, figure: FigureKind) -> Result<MiquelConfiguration> {
    let (tri, v, tol) = (&scene.triangle, scene.vertex, scene.tolerance);
    Ok(match &scene.payload {
        Payload::Cevians(c) => forward_miquel(tri, v, *c, tol)?,
        Payload::Point(p) => forward_miquel(tri, v, inverse_miquel(tri, v, *p, tol)?, tol)?,
        Payload::Center(k) => center_case(tri, v, *k, tol)?.config,
        Payload::LineAngle(_) => {
            return Err(RenderError::PayloadMismatch {
                figure,
                needs: "a Miquel configuration",
            })
        }
    })
}

fn labels(v: Vertex) -> [&'static str; 3] {
    match v {
        Vertex::A => ["A", "B", "C"],
        Vertex::B => ["B", "C", "A"],
        Vertex::C => ["C", "A", "B"],
    }
}

fn add_construction(f: &mut Figure, scene: &Scene, cfg: &MiquelConfiguration) -> Result<()> {
    let (a, b, c) = scene.triangle.rotated(scene.vertex);
    f.circles.push((scene.triangle.circumcircle(), Style::Thin));
    for circle in cfg.circles() {
        f.circles.push((circle?, Style::Accent));
    }
    f.lines.push((Line::through(a, b)?, Style::Thin));
    f.lines.push((Line::through(a, c)?, Style::Thin));
    f.lines.push((Line::through(b, cfg.b_a)?, Style::Main));
    f.lines.push((Line::through(c, cfg.c_a)?, Style::Main));
    f.triangle(a, b, c);
    let [la, lb, lc] = labels(scene.vertex);
    f.point(a, la);
    f.point(b, lb);
    f.point(c, lc);
    f.point(cfg.b_a, &format!("{lb}_{la}"));
    f.point(cfg.c_a, &format!("{lc}_{la}"));
    f.point(cfg.n, &format!("N_{la}"));
    f.point(cfg.m, &format!("M_{la}"));
    Ok(())
}

fn build(scene: &Scene, kind: FigureKind) -> Result<Figure> {
    let (tri, v, tol) = (&scene.triangle, scene.vertex, scene.tolerance);
    let (a, b, c) = tri.rotated(v);
    let [la, lb, lc] = labels(v);
    let circ = tri.circumcircle();
    let mut f = Figure::default();
    match kind {
        FigureKind::Construction => {
            let cfg = configuration(scene, kind)?;
            add_construction(&mut f, scene, &cfg)?;
        }
        FigureKind::Locus => {
            let aux = auxiliary_data(tri, v, tol)?;
            f.region = Some((
                b,
                vec![
                    Arc { circle: circ, to: c, avoid: a },
                    Arc { circle: aux.omega_ab, to: aux.main_centre, avoid: a },
                    Arc { circle: aux.omega_ac, to: b, avoid: a },
                ],
            ));
            f.circles.push((circ, Style::Main));
            f.circles.push((aux.omega_ab, Style::Aux));
            f.circles.push((aux.omega_ac, Style::Aux));
            f.triangle(a, b, c);
            f.point(a, la);
            f.point(b, lb);
            f.point(c, lc);
            f.point(aux.main_centre, &format!("I_{la}"));
            if let Payload::Point(p) = scene.payload {
                f.point(p, "P");
            }
        }
        FigureKind::Axis => {
            let aux = auxiliary_data(tri, v, tol)?;
            f.circles.push((circ, Style::Main));
            f.circles.push((aux.omega_ab, Style::Aux));
            f.circles.push((aux.omega_ac, Style::Aux));
            f.lines.push((aux.axis, Style::Accent));
            if let Ok(m) = tangent_intersection(tri, v, tol) {
                f.lines.push((tangent_line_at(&circ, b, tol)?, Style::Thin));
                f.lines.push((tangent_line_at(&circ, c, tol)?, Style::Thin));
                f.point(m, "M");
            }
            f.triangle(a, b, c);
            f.point(a, la);
            f.point(b, lb);
            f.point(c, lc);
            f.point(aux.main_centre, &format!("I_{la}"));
        }
        FigureKind::Brocard => {
            let data = brocard_data(tri, tol)?;
            f.circles.push((circ, Style::Thin));
            for x in Vertex::ALL {
                let aux = auxiliary_data(tri, x, tol)?;
                f.circles.push((aux.omega_ab, Style::Aux));
                f.circles.push((aux.omega_ac, Style::Aux));
            }
            f.circles.push((data.circle, Style::Accent));
            f.triangle(tri.a(), tri.b(), tri.c());
            f.point(tri.a(), "A");
            f.point(tri.b(), "B");
            f.point(tri.c(), "C");
            for (p, l) in data.second_triangle.iter().zip(["I_A", "I_B", "I_C"]) {
                f.point(*p, l);
            }
            f.point(circ.center, "O");
            f.point(data.points.first, "G");
            f.point(data.points.second, "G'");
        }
        FigureKind::OmegaTan => {
            let w = omega_tan(tri, v, tol)?;
            f.circles.push((circ, Style::Main));
            f.circles.push((w, Style::Accent));
            f.lines.push((tangent_line_at(&circ, b, tol)?, Style::Thin));
            f.lines.push((tangent_line_at(&circ, c, tol)?, Style::Thin));
            f.triangle(a, b, c);
            f.point(a, la);
            f.point(b, lb);
            f.point(c, lc);
            f.point(w.center, "M");
            if let Ok(cfg) = configuration(scene, kind) {
                f.lines.push((Line::through(b, cfg.b_a)?, Style::Thin));
                f.lines.push((Line::through(c, cfg.c_a)?, Style::Thin));
                f.point(cfg.m, &format!("M_{la}"));
            }
        }
        FigureKind::Center => {
            let Payload::Center(center) = scene.payload else {
                return Err(RenderError::PayloadMismatch { figure: kind, needs: "a center" });
            };
            let rep = center_case(tri, v, center, tol)?;
            add_construction(&mut f, scene, &rep.config)?;
            f.point(classic_center(tri, center), center.as_str());
        }
        FigureKind::Isogonal => {
            let Payload::LineAngle(mu0) = scene.payload else {
                return Err(RenderError::PayloadMismatch { figure: kind, needs: "a line angle" });
            };
            let l = vertex_line(tri, v, mu0)?;
            let image = isogonal_image_line(tri, v, mu0)?;
            let fit = isogonal_circle(tri, v, &l, tol)?;
            f.circles.push((circ, Style::Thin));
            match fit.fit {
                IsogonalFit::Circle(k) => f.circles.push((k, Style::Accent)),
                IsogonalFit::NearLine(k) => f.lines.push((k, Style::Accent)),
            }
            f.lines.push((l, Style::Main));
            f.lines.push((image, Style::Aux));
            f.triangle(a, b, c);
            f.point(a, la);
            f.point(b, lb);
            f.point(c, lc);
            f.point(b + c - a, "B+C-A");
            for (i, m) in fit.samples.iter().enumerate() {
                f.point(*m, &format!("M{}", i + 1));
            }
        }
    }
    Ok(f)
}

/// A small document naming the error, used when a figure cannot be built.
pub fn diagnostic(message: &str) -> String {
    format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"480\" height=\"60\" viewBox=\"0 0 480 60\">\n",
            "<rect width=\"480\" height=\"60\" fill=\"#ffffff\"/>\n",
            "<text x=\"10\" y=\"35\" font-family=\"sans-serif\" font-size=\"14\">error: {}</text>\n",
            "</svg>\n"
        ),
        escape(message)
    )
}

/// Renders a scene; construction failures produce a diagnostic document.
pub fn render_svg(scene: &Scene, opts: &RenderOptions) -> String {
    try_render_svg(scene, opts).unwrap_or_else(|e| diagnostic(&e.to_string()))
}

pub fn try_render_svg(scene: &Scene, opts: &RenderOptions) -> Result<String> {
    let kind = opts.figure.unwrap_or_else(|| FigureKind::default_for(&scene.payload));
    let fig = build(scene, kind)?;
    Ok(fig.to_svg(scene.triangle.diameter(), opts.width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::parse_scene;

    fn scene(extra: &str) -> Scene {
        parse_scene(&format!("a = 0, 0\nb = 4, 0\nc = 0, 3\n{extra}\n")).unwrap()
    }

    fn locus_scene() -> Scene {
        parse_scene("a = 0, 0\nb = 2, 0\nc = 0, 2\npoint = 1.8, 1.8\n").unwrap()
    }

    fn opts(kind: FigureKind) -> RenderOptions {
        RenderOptions {
            figure: Some(kind),
            ..Default::default()
        }
    }

    #[test]
    fn incenter_figure_has_concurrent_circles() {
        let svg = render_svg(&scene("point = 1, 1"), &RenderOptions::default());
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains(">M_A</text>"));
        // the four Miquel circles
        assert_eq!(svg.matches(r##"stroke="#c0392b""##).count(), 4);
    }

    #[test]
    fn locus_figure_radii() {
        let s = locus_scene();
        let svg = render_svg(&s, &opts(FigureKind::Locus));
        assert!(svg.contains("<path d=\"M "));
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        // circumradius √2, both auxiliary radii 1
        let radii: Vec<f64> = svg
            .lines()
            .filter(|l| l.starts_with("<circle") && l.contains("fill=\"none\""))
            .map(|l| {
                let r = l.split("r=\"").nth(1).unwrap();
                r[..r.find('"').unwrap()].parse().unwrap()
            })
            .collect();
        assert_eq!(radii.len(), 3);
        assert!((radii[0] / radii[1] - 2f64.sqrt()).abs() < 1e-7);
        assert!((radii[1] - radii[2]).abs() < 1e-6);
    }

    #[test]
    fn byte_identical() {
        for kind in FigureKind::ALL {
            let s = match kind {
                FigureKind::Center => scene("center = circumcenter"),
                FigureKind::Isogonal => scene("line_angle = 0.6"),
                _ => parse_scene("a = 0, 0\nb = 4, 0\nc = 1, 3\ncevians = 0.3, 0.6\n").unwrap(),
            };
            let a = render_svg(&s, &opts(kind));
            assert_eq!(a, render_svg(&s, &opts(kind)));
            assert!(!a.contains("error:"), "{kind}: {a}");
            assert!(!a.contains("NaN") && !a.contains("inf"), "{kind}");
        }
    }

    #[test]
    fn errors_become_diagnostics() {
        let svg = render_svg(&scene("point = 2, 0"), &RenderOptions::default());
        assert!(svg.contains("error: InadmissiblePoint(on_AB)"));
        let svg = render_svg(&scene("point = 1, 1"), &opts(FigureKind::OmegaTan));
        assert!(svg.contains("error: TangentsParallel"));
    }

    #[test]
    fn region_arc_flags() {
        // unit circle, from (1,0) to (0,1) avoiding (-1,0): the short ccw arc
        let circle = Circle::new(Point::ORIGIN, 1.0).unwrap();
        let arc = Arc { circle, to: Point::new(0., 1.), avoid: Point::new(-1., 0.) };
        assert_eq!(arc_flags(&arc, Point::new(1., 0.)), (0, 0));
        let arc = Arc { circle, to: Point::new(0., 1.), avoid: Point::new(0.7, 0.7) };
        assert_eq!(arc_flags(&arc, Point::new(1., 0.)), (1, 1));
    }
}
