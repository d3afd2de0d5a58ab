//! Planar primitives, constructions and tolerance-aware predicates.
//!
//! Everything here is a pure function of `Copy` values. Predicates that
//! decide nearness take an explicit [`Tolerance`]; constructions that have
//! no natural scale use [`Tolerance::default`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Absolute and relative nearness thresholds.
///
/// The effective threshold for a construction of diameter `d` is
/// `max(absolute_eps, relative_eps * d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub absolute_eps: f64,
    pub relative_eps: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        absolute_eps: 1e-12,
        relative_eps: 1e-9,
    };

    pub fn new(absolute_eps: f64, relative_eps: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(absolute_eps) && ok(relative_eps) {
            Ok(Tolerance {
                absolute_eps,
                relative_eps,
            })
        } else {
            Err(Error::InvalidTolerance)
        }
    }

    #[inline]
    pub fn effective(&self, scale: f64) -> f64 {
        self.absolute_eps.max(self.relative_eps * scale.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

/// A point (or displacement) in the Cartesian plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(radius * c, radius * s)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn unit(self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    /// `self + t (o - self)`.
    #[inline]
    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        p * self
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, k: f64) -> Point {
        Point::new(self.x / k, self.y / k)
    }
}

/// An infinite line stored as an anchor and a unit direction.
///
/// The direction orients the line for sidedness and ray tests; geometric
/// equality ignores its sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    anchor: Point,
    direction: Point,
}

impl Line {
    pub fn new(anchor: Point, direction: Point) -> Result<Self> {
        if !anchor.is_finite() || !direction.is_finite() {
            return Err(Error::NonFinite);
        }
        let direction = direction.unit().ok_or(Error::DegenerateLine)?;
        Ok(Line { anchor, direction })
    }

    /// The line through `p` oriented towards `q`.
    pub fn through(p: Point, q: Point) -> Result<Self> {
        Line::new(p, q - p)
    }

    #[inline]
    pub fn anchor(&self) -> Point {
        self.anchor
    }

    #[inline]
    pub fn direction(&self) -> Point {
        self.direction
    }

    /// Unit normal, a quarter turn counter-clockwise from the direction.
    #[inline]
    pub fn normal(&self) -> Point {
        self.direction.perp()
    }

    #[inline]
    pub fn point_at(&self, t: f64) -> Point {
        self.anchor + self.direction * t
    }

    #[inline]
    pub fn parameter_of(&self, p: Point) -> f64 {
        (p - self.anchor).dot(self.direction)
    }

    #[inline]
    pub fn project(&self, p: Point) -> Point {
        self.point_at(self.parameter_of(p))
    }

    /// Positive on the left of the direction.
    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.direction.cross(p - self.anchor)
    }

    #[inline]
    pub fn distance(&self, p: Point) -> f64 {
        self.signed_distance(p).abs()
    }

    pub fn reversed(&self) -> Line {
        Line {
            anchor: self.anchor,
            direction: -self.direction,
        }
    }

    /// Unoriented angle between two lines, in `[0, π/2]`.
    pub fn angle_to(&self, other: &Line) -> f64 {
        let s = self.direction.cross(other.direction).abs();
        let c = self.direction.dot(other.direction).abs();
        s.atan2(c)
    }

    /// Same point set within `tol` at the given length scale.
    pub fn same_as(&self, other: &Line, tol: Tolerance, scale: f64) -> bool {
        self.direction.cross(other.direction).abs() <= tol.relative_eps
            && self.distance(other.anchor) <= tol.effective(scale)
    }
}

/// A circle with strictly positive radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(Error::NonFinite);
        }
        if radius <= 0.0 {
            return Err(Error::NonPositiveRadius);
        }
        Ok(Circle { center, radius })
    }

    /// `|dist(p, center) - radius|`.
    #[inline]
    pub fn boundary_distance(&self, p: Point) -> f64 {
        (p.dist(self.center) - self.radius).abs()
    }

    /// Negative inside, positive outside.
    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        p.dist(self.center) - self.radius
    }

    pub fn point_at_angle(&self, angle: f64) -> Point {
        self.center + Point::from_polar(self.radius, angle)
    }

    /// Other intersection of the circle with the line through `known`
    /// (assumed on the circle) along `direction`, as an affine parameter
    /// `t` with the point at `known + t * direction`.
    ///
    /// Uses the product of roots, so it stays accurate when the second
    /// point approaches `known`.
    pub fn second_parameter_on_line(&self, known: Point, direction: Point) -> f64 {
        -2.0 * (known - self.center).dot(direction) / direction.norm_sq()
    }

    /// Other common point of two circles that both pass through `known`:
    /// the mirror image of `known` across the line of centres.
    pub fn second_common_point(&self, other: &Circle, known: Point) -> Result<Point> {
        let axis = Line::through(self.center, other.center).map_err(|_| Error::CoincidentCircles)?;
        Ok(reflect_point_about_line(known, &axis))
    }
}

/// One of the three labelled triangle vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Vertex {
    #[default]
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn next(self) -> Vertex {
        match self {
            Vertex::A => Vertex::B,
            Vertex::B => Vertex::C,
            Vertex::C => Vertex::A,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Vertex::A => "A",
            Vertex::B => "B",
            Vertex::C => "C",
        })
    }
}

impl FromStr for Vertex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Vertex::A),
            "B" | "b" => Ok(Vertex::B),
            "C" | "c" => Ok(Vertex::C),
            other => Err(format!("unknown vertex '{other}', expected A, B or C")),
        }
    }
}

/// A non-degenerate triangle with labelled vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    a: Point,
    b: Point,
    c: Point,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        Triangle::with_tolerance(a, b, c, Tolerance::default())
    }

    pub fn with_tolerance(a: Point, b: Point, c: Point, tol: Tolerance) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite);
        }
        if orientation(a, b, c, tol) == Orientation::Collinear {
            return Err(Error::DegenerateTriangle);
        }
        Ok(Triangle { a, b, c })
    }

    #[inline]
    pub fn a(&self) -> Point {
        self.a
    }
    #[inline]
    pub fn b(&self) -> Point {
        self.b
    }
    #[inline]
    pub fn c(&self) -> Point {
        self.c
    }

    pub fn vertex(&self, v: Vertex) -> Point {
        match v {
            Vertex::A => self.a,
            Vertex::B => self.b,
            Vertex::C => self.c,
        }
    }

    /// Vertices cyclically rotated so that `v` plays the role of `A`.
    pub fn rotated(&self, v: Vertex) -> (Point, Point, Point) {
        match v {
            Vertex::A => (self.a, self.b, self.c),
            Vertex::B => (self.b, self.c, self.a),
            Vertex::C => (self.c, self.a, self.b),
        }
    }

    /// The same triangle relabelled so that `v` becomes `A`.
    pub fn relabeled(&self, v: Vertex) -> Triangle {
        let (a, b, c) = self.rotated(v);
        Triangle { a, b, c }
    }

    /// Longest side length.
    pub fn diameter(&self) -> f64 {
        diameter3(self.a, self.b, self.c)
    }

    pub fn is_counter_clockwise(&self) -> bool {
        (self.b - self.a).cross(self.c - self.a) > 0.0
    }

    pub fn circumcircle(&self) -> Circle {
        circumcircle(self.a, self.b, self.c).expect("triangle invariant guarantees non-collinear vertices")
    }

    /// Interior angle at `v`, in `(0, π)`.
    pub fn angle(&self, v: Vertex) -> f64 {
        let (a, b, c) = self.rotated(v);
        let (u, w) = (b - a, c - a);
        u.cross(w).abs().atan2(u.dot(w))
    }
}

fn diameter3(p: Point, q: Point, r: Point) -> f64 {
    p.dist(q).max(q.dist(r)).max(r.dist(p))
}

/// Sign of a signed area.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// Orientation of `(p, q, r)`; collinear when the doubled signed area is
/// within `tol.effective(d) * d`, `d` being the diameter of the triple.
pub fn orientation(p: Point, q: Point, r: Point, tol: Tolerance) -> Orientation {
    let det = (q - p).cross(r - p);
    let d = diameter3(p, q, r);
    if det.abs() <= tol.effective(d) * d.max(tol.absolute_eps) {
        Orientation::Collinear
    } else if det > 0.0 {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// Circle through three points.
///
/// The centre is the intersection of the perpendicular bisectors of the two
/// shortest sides, taken relative to their shared vertex.
pub fn circumcircle(p: Point, q: Point, r: Point) -> Result<Circle> {
    if !(p.is_finite() && q.is_finite() && r.is_finite()) {
        return Err(Error::NonFinite);
    }
    if orientation(p, q, r, Tolerance::default()) == Orientation::Collinear {
        return Err(Error::CollinearInput);
    }
    // pivot = vertex opposite the longest side
    let (lp, lq, lr) = (q.dist(r), r.dist(p), p.dist(q));
    let (pivot, s, t) = if lp >= lq && lp >= lr {
        (p, q, r)
    } else if lq >= lr {
        (q, r, p)
    } else {
        (r, p, q)
    };
    let u = s - pivot;
    let v = t - pivot;
    let d = 2.0 * u.cross(v);
    let (uu, vv) = (u.norm_sq(), v.norm_sq());
    let offset = Point::new(v.y * uu - u.y * vv, u.x * vv - v.x * uu) / d;
    let center = pivot + offset;
    let radius = (center.dist(p) + center.dist(q) + center.dist(r)) / 3.0;
    Circle::new(center, radius)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Distinct,
    Coincident,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineIntersection {
    Point(Point),
    Parallel(Parallelism),
}

impl LineIntersection {
    pub fn point(self) -> Option<Point> {
        match self {
            LineIntersection::Point(p) => Some(p),
            LineIntersection::Parallel(_) => None,
        }
    }
}

/// Directions whose sine is within `tol.relative_eps` count as parallel.
pub fn intersect_lines(l1: &Line, l2: &Line, tol: Tolerance) -> LineIntersection {
    let denom = l1.direction.cross(l2.direction);
    if denom.abs() <= tol.relative_eps {
        let scale = l1.anchor.dist(l2.anchor);
        return if l1.distance(l2.anchor) <= tol.effective(scale) {
            LineIntersection::Parallel(Parallelism::Coincident)
        } else {
            LineIntersection::Parallel(Parallelism::Distinct)
        };
    }
    let s = (l2.anchor - l1.anchor).cross(l2.direction) / denom;
    LineIntersection::Point(l1.point_at(s))
}

/// Zero, one or two intersection points plus a tangency flag.
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    pub points: Vec<Point>,
    pub tangent: bool,
}

impl Crossing {
    fn empty() -> Self {
        Crossing {
            points: Vec::new(),
            tangent: false,
        }
    }
}

pub fn intersect_circle_line(c: &Circle, l: &Line, tol: Tolerance) -> Crossing {
    let foot = l.project(c.center);
    let h = l.distance(c.center);
    let eps = tol.effective(2.0 * c.radius);
    if (h - c.radius).abs() <= eps {
        return Crossing {
            points: vec![foot],
            tangent: true,
        };
    }
    if h > c.radius {
        return Crossing::empty();
    }
    let half = ((c.radius - h) * (c.radius + h)).sqrt();
    Crossing {
        points: vec![foot - l.direction * half, foot + l.direction * half],
        tangent: false,
    }
}

pub fn intersect_circles(c1: &Circle, c2: &Circle, tol: Tolerance) -> Result<Crossing> {
    let delta = c2.center - c1.center;
    let d = delta.norm();
    let scale = 2.0 * c1.radius.max(c2.radius);
    let eps = tol.effective(scale);
    if d <= eps {
        if (c1.radius - c2.radius).abs() <= eps {
            return Err(Error::CoincidentCircles);
        }
        return Ok(Crossing::empty());
    }
    let u = delta / d;
    let outer = c1.radius + c2.radius;
    let inner = (c1.radius - c2.radius).abs();
    if (d - outer).abs() <= eps || (d - inner).abs() <= eps {
        // Tangent point lies on the line of centres.
        let a = (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2.0 * d);
        let sign = if a >= 0.0 { 1.0 } else { -1.0 };
        return Ok(Crossing {
            points: vec![c1.center + u * (sign * c1.radius)],
            tangent: true,
        });
    }
    if d > outer || d < inner {
        return Ok(Crossing::empty());
    }
    let a = (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2.0 * d);
    let h = (c1.radius * c1.radius - a * a).max(0.0).sqrt();
    let base = c1.center + u * a;
    let v = u.perp();
    Ok(Crossing {
        points: vec![base + v * h, base - v * h],
        tangent: false,
    })
}

pub fn tangent_line_at(c: &Circle, p: Point, tol: Tolerance) -> Result<Line> {
    if c.boundary_distance(p) > tol.effective(2.0 * c.radius) {
        return Err(Error::PointNotOnCircle);
    }
    Line::new(p, (p - c.center).perp())
}

/// Circle through `touch` and `through`, tangent to `tangent` at `touch`.
pub fn tangent_circle_through(tangent: &Line, touch: Point, through: Point, tol: Tolerance) -> Result<Circle> {
    let w = through - touch;
    let scale = w.norm();
    if tangent.distance(touch) > tol.effective(scale) {
        return Err(Error::TouchNotOnTangent);
    }
    let n = tangent.normal();
    let h = w.dot(n);
    if h.abs() <= tol.effective(scale) {
        return Err(Error::ThroughPointOnTangent);
    }
    let s = w.norm_sq() / (2.0 * h);
    Circle::new(touch + n * s, s.abs())
}

/// Image of `p` under inversion in the circle about `center` with squared radius `power`.
pub fn invert_point(p: Point, center: Point, power: f64, tol: Tolerance) -> Result<Point> {
    let d = p - center;
    let r2 = d.norm_sq();
    if r2.sqrt() <= tol.effective(power.abs().sqrt()) {
        return Err(Error::CenterInversion);
    }
    Ok(center + d * (power / r2))
}

/// Unsigned angle between the rays `vertex → p` and `vertex → q`, in `[0, π]`.
pub fn angle_at(vertex: Point, p: Point, q: Point) -> Result<f64> {
    let u = p - vertex;
    let w = q - vertex;
    let min_len = Tolerance::DEFAULT.absolute_eps;
    if u.norm() <= min_len || w.norm() <= min_len {
        return Err(Error::DegenerateRay);
    }
    Ok(u.cross(w).abs().atan2(u.dot(w)))
}

pub fn reflect_point_about_line(p: Point, l: &Line) -> Point {
    let foot = l.project(p);
    foot * 2.0 - p
}

/// Distance of the fourth point of a quadruple from the circle through the
/// other three, normalised by the quadruple's diameter.
///
/// The triple with the smallest circumradius is used as the reference, which
/// is the best-conditioned choice at a common scale. Collinear triples are
/// skipped.
pub fn concyclic_residual(points: [Point; 4]) -> Result<f64> {
    let mut diameter = 0.0f64;
    for i in 0..4 {
        for j in i + 1..4 {
            diameter = diameter.max(points[i].dist(points[j]));
        }
    }
    let mut best: Option<(f64, f64)> = None;
    for skip in 0..4 {
        let tri: Vec<Point> = (0..4).filter(|&k| k != skip).map(|k| points[k]).collect();
        let Ok(circle) = circumcircle(tri[0], tri[1], tri[2]) else {
            continue;
        };
        let residual = circle.boundary_distance(points[skip]);
        if best.is_none_or(|(r, _)| circle.radius < r) {
            best = Some((circle.radius, residual));
        }
    }
    let (_, residual) = best.ok_or(Error::AllCollinear)?;
    Ok(residual / diameter)
}
