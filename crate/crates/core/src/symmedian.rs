//! Symmedians and the circle `ω_tan` centred at the tangent intersection.

use crate::error::{Error, Result};
use crate::geom::{intersect_lines, reflect_point_about_line, tangent_line_at, Circle, Line, LineIntersection, Point, Tolerance, Triangle, Vertex};

/// Below this sine of the angle between the two tangents, the tangent
/// intersection is too far away to give a well-conditioned direction.
const TANGENT_SINE_FLOOR: f64 = 1e-3;

/// Intersection of the circumcircle tangents at the two vertices other than `vertex`.
pub fn tangent_intersection(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Result<Point> {
    let (_, b, c) = tri.rotated(vertex);
    let circ = tri.circumcircle();
    let tb = tangent_line_at(&circ, b, tol)?;
    let tc = tangent_line_at(&circ, c, tol)?;
    match intersect_lines(&tb, &tc, tol) {
        LineIntersection::Point(m) => Ok(m),
        LineIntersection::Parallel(_) => Err(Error::TangentsParallel),
    }
}

/// The median from `vertex` reflected in the internal angle bisector.
pub fn symmedian_by_reflection(tri: &Triangle, vertex: Vertex) -> Result<Line> {
    let (a, b, c) = tri.rotated(vertex);
    let (ub, uc) = ((b - a).unit(), (c - a).unit());
    let (Some(ub), Some(uc)) = (ub, uc) else {
        return Err(Error::DegenerateTriangle);
    };
    let bisector = Line::new(a, ub + uc)?;
    let image = reflect_point_about_line(b.midpoint(c), &bisector);
    Line::through(a, image)
}

/// The symmedian from `vertex`, through the tangent intersection when that
/// is well conditioned and by reflecting the median otherwise.
pub fn symmedian_line(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Result<Line> {
    let (a, b, c) = tri.rotated(vertex);
    let circ = tri.circumcircle();
    let tb = tangent_line_at(&circ, b, tol)?;
    let tc = tangent_line_at(&circ, c, tol)?;
    if tb.direction().cross(tc.direction()).abs() < TANGENT_SINE_FLOOR {
        return symmedian_by_reflection(tri, vertex);
    }
    match intersect_lines(&tb, &tc, tol) {
        LineIntersection::Point(m) => Line::through(a, m),
        LineIntersection::Parallel(_) => symmedian_by_reflection(tri, vertex),
    }
}

/// Circle through B and C centred at the tangent intersection.
pub fn omega_tan(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Result<Circle> {
    let (_, b, c) = tri.rotated(vertex);
    let m = tangent_intersection(tri, vertex, tol)?;
    Circle::new(m, 0.5 * (m.dist(b) + m.dist(c)))
}
