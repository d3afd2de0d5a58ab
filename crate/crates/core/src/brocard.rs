//! Second Brocard triangle, Brocard circle and Brocard points.

use crate::error::{Error, Result};
use crate::geom::{circumcircle, orientation, Circle, Orientation, Point, Tolerance, Triangle, Vertex};
use crate::locus::{auxiliary_data, AuxiliaryData};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrocardData {
    /// Main centres `(I_A, I_B, I_C)`.
    pub second_triangle: [Point; 3],
    pub circle: Circle,
    pub points: BrocardPoints,
}

/// The two Brocard points with their residuals against the third circle of
/// each family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrocardPoints {
    /// Common point of `ω_{A,C}`, `ω_{B,A}`, `ω_{C,B}`.
    pub first: Point,
    /// Common point of `ω_{A,B}`, `ω_{B,C}`, `ω_{C,A}`.
    pub second: Point,
    pub first_residual: f64,
    pub second_residual: f64,
}

fn aux_all(tri: &Triangle, tol: Tolerance) -> Result<[AuxiliaryData; 3]> {
    Ok([
        auxiliary_data(tri, Vertex::A, tol)?,
        auxiliary_data(tri, Vertex::B, tol)?,
        auxiliary_data(tri, Vertex::C, tol)?,
    ])
}

pub fn second_brocard_triangle(tri: &Triangle, tol: Tolerance) -> Result<[Point; 3]> {
    Ok(aux_all(tri, tol)?.map(|a| a.main_centre))
}

/// Circle through the three main centres. The circumcentre lies on it too.
pub fn brocard_circle(tri: &Triangle, tol: Tolerance) -> Result<Circle> {
    let [ia, ib, ic] = second_brocard_triangle(tri, tol)?;
    if orientation(ia, ib, ic, tol) == Orientation::Collinear {
        return Err(Error::NearEquilateralDegeneracy);
    }
    circumcircle(ia, ib, ic).map_err(|_| Error::NearEquilateralDegeneracy)
}

pub fn brocard_points(tri: &Triangle, tol: Tolerance) -> Result<BrocardPoints> {
    let [aa, ab, ac] = aux_all(tri, tol)?;
    let d = tri.diameter();
    // With the vertex rotated to the front, `omega_ac` at B is ω_{B,A} and
    // at C is ω_{C,B}; `omega_ab` gives ω_{B,C} and ω_{C,A}.
    // ω_{A,C} and ω_{B,A} both pass through B.
    let first = aa.omega_ac.second_common_point(&ab.omega_ac, tri.b())?;
    // ω_{A,B} and ω_{B,C} both pass through A.
    let second = aa.omega_ab.second_common_point(&ab.omega_ab, tri.a())?;
    Ok(BrocardPoints {
        first,
        second,
        first_residual: ac.omega_ac.boundary_distance(first) / d,
        second_residual: ac.omega_ab.boundary_distance(second) / d,
    })
}

/// Angles `(∠GAC, ∠GBA, ∠GCB)` at the first point and `(∠G'AB, ∠G'BC, ∠G'CA)`
/// at the second. All six equal the Brocard angle.
pub fn brocard_angles(tri: &Triangle, points: &BrocardPoints) -> Result<([f64; 3], [f64; 3])> {
    use crate::geom::angle_at;
    let (a, b, c) = (tri.a(), tri.b(), tri.c());
    let (g, h) = (points.first, points.second);
    Ok((
        [angle_at(a, c, g)?, angle_at(b, a, g)?, angle_at(c, b, g)?],
        [angle_at(a, b, h)?, angle_at(b, c, h)?, angle_at(c, a, h)?],
    ))
}

pub fn brocard_data(tri: &Triangle, tol: Tolerance) -> Result<BrocardData> {
    Ok(BrocardData {
        second_triangle: second_brocard_triangle(tri, tol)?,
        circle: brocard_circle(tri, tol)?,
        points: brocard_points(tri, tol)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn acute() -> Triangle {
        Triangle::new(p(0., 0.), p(4., 0.), p(1., 3.)).unwrap()
    }

    fn equilateral() -> Triangle {
        Triangle::new(p(0., 0.), p(1., 0.), p(0.5, 3f64.sqrt() / 2.0)).unwrap()
    }

    /// `cot ω = cot A + cot B + cot C`.
    fn brocard_angle_oracle(t: &Triangle) -> f64 {
        let cot: f64 = Vertex::ALL.iter().map(|&v| 1.0 / t.angle(v).tan()).sum();
        (1.0 / cot).atan()
    }

    #[test]
    fn second_triangle_on_aux_circles() {
        let t = Triangle::new(p(0., 0.), p(2., 0.), p(0., 2.)).unwrap();
        let [ia, ib, ic] = second_brocard_triangle(&t, TOL).unwrap();
        assert!(ia.dist(p(1., 1.)) < 1e-15);
        for (v, i) in Vertex::ALL.into_iter().zip([ia, ib, ic]) {
            let aux = auxiliary_data(&t, v, TOL).unwrap();
            assert!(aux.omega_ab.boundary_distance(i) <= 1e-10);
            assert!(aux.omega_ac.boundary_distance(i) <= 1e-10);
        }
    }

    #[test]
    fn equilateral_centres_coincide() {
        let t = equilateral();
        let o = t.circumcircle().center;
        for i in second_brocard_triangle(&t, TOL).unwrap() {
            assert!(i.dist(o) < 1e-15);
        }
        assert_eq!(brocard_circle(&t, TOL), Err(Error::NearEquilateralDegeneracy));
        let pts = brocard_points(&t, TOL).unwrap();
        assert!(pts.first.dist(o) < 1e-15 && pts.second.dist(o) < 1e-15);
    }

    #[test]
    fn circle_passes_through_circumcentre() {
        let t = acute();
        let c = brocard_circle(&t, TOL).unwrap();
        assert!(c.boundary_distance(t.circumcircle().center) <= 1e-9);
    }

    #[test]
    fn points_and_angles() {
        let t = acute();
        let pts = brocard_points(&t, TOL).unwrap();
        assert!(pts.first.dist(pts.second) > 1e-3);
        assert!(pts.first_residual <= 1e-9 && pts.second_residual <= 1e-9);
        let (g, h) = brocard_angles(&t, &pts).unwrap();
        let w = brocard_angle_oracle(&t);
        for x in g.iter().chain(&h) {
            assert!((x - w).abs() < 1e-12, "{x} vs {w}");
        }
    }

    #[test]
    fn both_points_lie_on_brocard_circle() {
        let t = acute();
        let data = brocard_data(&t, TOL).unwrap();
        assert!(data.circle.boundary_distance(data.points.first) <= 1e-9);
        assert!(data.circle.boundary_distance(data.points.second) <= 1e-9);
    }
}
