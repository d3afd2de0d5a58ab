//! Line-oriented scene files.
//!
//! ```text
//! # 3-4-5 triangle, incenter as Miquel point
//! a = 0, 0
//! b = 4, 0
//! c = 0, 3
//! vertex = A
//! point = 1, 1
//! ```
//!
//! Exactly one payload key (`cevians`, `point`, `line_angle`, `center`) is
//! required. Optional keys: `vertex` (default A), `seed` (default 0),
//! `tolerance.absolute`, `tolerance.relative`.

use std::fmt;

use miquel_core::centers::CenterKind;
use miquel_core::{CevianPair, Point, Tolerance, Triangle, Vertex};

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Cevians(CevianPair),
    Point(Point),
    /// Angle of a line through the vertex, from ray AC towards B.
    LineAngle(f64),
    Center(CenterKind),
}

impl Payload {
    pub fn key(&self) -> &'static str {
        match self {
            Payload::Cevians(_) => "cevians",
            Payload::Point(_) => "point",
            Payload::LineAngle(_) => "line_angle",
            Payload::Center(_) => "center",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub triangle: Triangle,
    pub vertex: Vertex,
    pub payload: Payload,
    pub tolerance: Tolerance,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line, or 0 when the problem is a missing key.
    pub line: usize,
    pub field: String,
    pub reason: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParseError(line {}, {}: {})", self.line, self.field, self.reason)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, field: &str, reason: impl Into<String>) -> ParseError {
    ParseError {
        line,
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn number(line: usize, field: &str, s: &str) -> Result<f64, ParseError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| err(line, field, format!("invalid number `{}`", s.trim())))?;
    if !v.is_finite() {
        return Err(err(line, field, "non-finite value"));
    }
    Ok(v)
}

fn pair(line: usize, field: &str, s: &str) -> Result<(f64, f64), ParseError> {
    let mut parts = s.split(',');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(x), Some(y), None) => Ok((number(line, field, x)?, number(line, field, y)?)),
        _ => Err(err(line, field, "expected two comma-separated numbers")),
    }
}

#[derive(Default)]
struct Raw {
    vertices: [Option<(usize, Point)>; 3],
    vertex: Option<Vertex>,
    payloads: Vec<(usize, Payload)>,
    absolute: Option<f64>,
    relative: Option<f64>,
    seed: Option<u64>,
}

pub fn parse_scene(text: &str) -> Result<Scene, ParseError> {
    let mut raw = Raw::default();
    let mut seen: Vec<String> = Vec::new();
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(err(line, content, "expected `key = value`"));
        };
        let (key, value) = (key.trim(), value.trim());
        if seen.iter().any(|k| k == key) {
            return Err(err(line, key, "duplicate key"));
        }
        seen.push(key.to_string());
        match key {
            "a" | "b" | "c" => {
                let (x, y) = pair(line, key, value)?;
                let slot = match key {
                    "a" => 0,
                    "b" => 1,
                    _ => 2,
                };
                raw.vertices[slot] = Some((line, Point::new(x, y)));
            }
            "vertex" => raw.vertex = Some(value.parse().map_err(|e: String| err(line, key, e))?),
            "cevians" => {
                let (t_b, t_c) = pair(line, key, value)?;
                raw.payloads.push((line, Payload::Cevians(CevianPair::new(t_b, t_c))));
            }
            "point" => {
                let (x, y) = pair(line, key, value)?;
                raw.payloads.push((line, Payload::Point(Point::new(x, y))));
            }
            "line_angle" => raw.payloads.push((line, Payload::LineAngle(number(line, key, value)?))),
            "center" => {
                let kind = value.parse().map_err(|e: String| err(line, key, e))?;
                raw.payloads.push((line, Payload::Center(kind)));
            }
            "tolerance.absolute" => raw.absolute = Some(number(line, key, value)?),
            "tolerance.relative" => raw.relative = Some(number(line, key, value)?),
            "seed" => {
                raw.seed = Some(
                    value
                        .parse()
                        .map_err(|_| err(line, key, format!("invalid seed `{value}`")))?,
                )
            }
            _ => return Err(err(line, key, "unknown key")),
        }
    }
    finish(raw)
}

fn finish(raw: Raw) -> Result<Scene, ParseError> {
    let mut pts = [Point::ORIGIN; 3];
    let mut last_line = 0;
    for (i, name) in ["a", "b", "c"].iter().enumerate() {
        let (line, p) = raw.vertices[i].ok_or_else(|| err(0, name, "missing"))?;
        pts[i] = p;
        last_line = last_line.max(line);
    }
    let default = Tolerance::DEFAULT;
    let tolerance = Tolerance::new(
        raw.absolute.unwrap_or(default.absolute_eps),
        raw.relative.unwrap_or(default.relative_eps),
    )
    .map_err(|_| err(0, "tolerance", "tolerances must be positive"))?;
    let triangle = Triangle::with_tolerance(pts[0], pts[1], pts[2], tolerance)
        .map_err(|_| err(last_line, "triangle", "degenerate triangle"))?;
    let payload = match raw.payloads.as_slice() {
        [(_, p)] => p.clone(),
        [] => return Err(err(0, "payload", "exactly one payload")),
        [_, (line, p), ..] => return Err(err(*line, p.key(), "exactly one payload")),
    };
    Ok(Scene {
        triangle,
        vertex: raw.vertex.unwrap_or(Vertex::A),
        payload,
        tolerance,
        seed: raw.seed.unwrap_or(0),
    })
}

impl Scene {
    pub fn new(triangle: Triangle, vertex: Vertex, payload: Payload) -> Self {
        Scene {
            triangle,
            vertex,
            payload,
            tolerance: Tolerance::DEFAULT,
            seed: 0,
        }
    }

    /// Serialisation that parses back to an identical scene.
    pub fn to_text(&self) -> String {
        let t = &self.triangle;
        let mut out = String::new();
        for (k, p) in [("a", t.a()), ("b", t.b()), ("c", t.c())] {
            out.push_str(&format!("{k} = {:?}, {:?}\n", p.x, p.y));
        }
        out.push_str(&format!("vertex = {}\n", self.vertex));
        match &self.payload {
            Payload::Cevians(c) => out.push_str(&format!("cevians = {:?}, {:?}\n", c.t_b, c.t_c)),
            Payload::Point(p) => out.push_str(&format!("point = {:?}, {:?}\n", p.x, p.y)),
            Payload::LineAngle(a) => out.push_str(&format!("line_angle = {a:?}\n")),
            Payload::Center(k) => out.push_str(&format!("center = {k}\n")),
        }
        if self.tolerance != Tolerance::DEFAULT {
            out.push_str(&format!("tolerance.absolute = {:?}\n", self.tolerance.absolute_eps));
            out.push_str(&format!("tolerance.relative = {:?}\n", self.tolerance.relative_eps));
        }
        out.push_str(&format!("seed = {}\n", self.seed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRI: &str = "a = 0, 0\nb = 4, 0\nc = 0, 3\n";

    #[test]
    fn minimal_cevian_scene() {
        let s = parse_scene(&format!("{TRI}cevians = 0.5, 0.5\n")).unwrap();
        assert_eq!(s.payload, Payload::Cevians(CevianPair::new(0.5, 0.5)));
        assert_eq!(s.vertex, Vertex::A);
        assert_eq!(s.seed, 0);
    }

    #[test]
    fn comments_and_whitespace() {
        let s = parse_scene("# header\n  a=0,0  # origin\nb = 4 , 0\n\nc = 0, 3\nvertex = C\ncenter = orthocenter\nseed = 7\n").unwrap();
        assert_eq!(s.vertex, Vertex::C);
        assert_eq!(s.payload, Payload::Center(CenterKind::Orthocenter));
        assert_eq!(s.seed, 7);
    }

    #[test]
    fn degenerate_triangle() {
        let e = parse_scene("a = 0, 0\nb = 1, 1\nc = 2, 2\npoint = 1, 0\n").unwrap_err();
        assert_eq!((e.line, e.field.as_str(), e.reason.as_str()), (3, "triangle", "degenerate triangle"));
    }

    #[test]
    fn two_payloads() {
        let e = parse_scene(&format!("{TRI}point = 1, 1\ncevians = 0.5, 0.5\n")).unwrap_err();
        assert_eq!(e.reason, "exactly one payload");
        assert_eq!(e.line, 5);
        let e = parse_scene(TRI).unwrap_err();
        assert_eq!(e.reason, "exactly one payload");
    }

    #[test]
    fn rejects_bad_values() {
        for (text, field) in [
            ("a = 0,0\nb = 1,0\nc = 0,1\npoint = nan, 0\n", "point"),
            ("a = 0,0\nb = 1,0\nc = 0,1\npoint = 0,5\nline_angle = 0,5\n", "line_angle"),
            ("a = 0,0\nb = 1,0\nc = 0,1\nvertex = D\npoint = 1,1\n", "vertex"),
            ("a = 0,0\nb = 1,0\nc = 0,1\ncenter = centroid\n", "center"),
            ("a = 0,0\nb = 1,0\nc = 0,1\npoint = 1,1\nfoo = 1\n", "foo"),
            ("a = 0,0\na = 1,0\n", "a"),
            ("a = 0,0\nb = 1,0\nc = 0,1\npoint = 1,1\ntolerance.relative = -1\n", "tolerance"),
            ("a = 0,0\nb = 1,0\npoint = 1,1\n", "c"),
            ("a 0,0\n", "a 0,0"),
        ] {
            let e = parse_scene(text).unwrap_err();
            assert_eq!(e.field, field, "{text:?} -> {e}");
        }
    }

    #[test]
    fn round_trip() {
        let text = format!("{TRI}vertex = B\npoint = 0.1, 0.30000000000000004\ntolerance.relative = 1e-8\nseed = 99\n");
        let s = parse_scene(&text).unwrap();
        assert_eq!(parse_scene(&s.to_text()).unwrap(), s);
        let s = parse_scene(&format!("{TRI}line_angle = 0.7\n")).unwrap();
        assert_eq!(parse_scene(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn display() {
        let e = err(3, "triangle", "degenerate triangle");
        assert_eq!(e.to_string(), "ParseError(line 3, triangle: degenerate triangle)");
    }
}
