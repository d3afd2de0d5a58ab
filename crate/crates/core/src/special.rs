//! Special loci: perpendicular cevians, antiparallel feet, and cevian
//! intersections on a line through the vertex.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{circumcircle, invert_point, orientation, Circle, Line, Orientation, Point, Tolerance, Triangle, Vertex};
use crate::miquel::{cevians_through, forward_miquel, CevianPair};
use crate::symmedian::{omega_tan, symmedian_line};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerpendicularityGaps {
    /// `|angle between the cevian lines − π/2|`.
    pub cevian_angle_gap: f64,
    /// Distance from the Miquel point to `ω_tan` over the diameter, or to
    /// line BC when the angle at the vertex is right.
    pub omega_tan_gap: f64,
    /// Set when `ω_tan` degenerated and line BC was used instead.
    pub bc_fallback: bool,
}

pub fn perpendicularity_equivalence(
    tri: &Triangle,
    vertex: Vertex,
    cev: CevianPair,
    tol: Tolerance,
) -> Result<PerpendicularityGaps> {
    let cfg = forward_miquel(tri, vertex, cev, tol)?;
    let (_, b, c) = tri.rotated(vertex);
    let d = tri.diameter();
    let angle = Line::through(b, cfg.b_a)?.angle_to(&Line::through(c, cfg.c_a)?);
    let (omega_tan_gap, bc_fallback) = match omega_tan(tri, vertex, tol) {
        Ok(w) => (w.boundary_distance(cfg.m) / d, false),
        Err(Error::TangentsParallel) => (Line::through(b, c)?.distance(cfg.m) / d, true),
        Err(e) => return Err(e),
    };
    Ok(PerpendicularityGaps {
        cevian_angle_gap: FRAC_PI_2 - angle,
        omega_tan_gap,
        bc_fallback,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntiparallelGaps {
    /// Angle between `B_AC_A` and BC.
    pub parallel_gap: f64,
    /// Distance from the Miquel point to the symmedian over the diameter.
    pub symmedian_gap: f64,
}

pub fn parallel_antiparallel_check(
    tri: &Triangle,
    vertex: Vertex,
    cev: CevianPair,
    tol: Tolerance,
) -> Result<AntiparallelGaps> {
    let cfg = forward_miquel(tri, vertex, cev, tol)?;
    let (_, b, c) = tri.rotated(vertex);
    let feet = Line::through(cfg.b_a, cfg.c_a)?;
    Ok(AntiparallelGaps {
        parallel_gap: feet.angle_to(&Line::through(b, c)?),
        symmedian_gap: symmedian_line(tri, vertex, tol)?.distance(cfg.m) / tri.diameter(),
    })
}

/// Similarity taking the vertex to 0 and the next-but-one vertex (C) to 1,
/// with B in the upper half plane: `B = b0·e^{iβ0}`, `β0 ∈ (0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedFrame {
    origin: Point,
    unit: Complex64,
    conjugate: bool,
    pub b0: f64,
    pub beta0: f64,
}

fn cx(p: Point) -> Complex64 {
    Complex64::new(p.x, p.y)
}

fn pt(z: Complex64) -> Point {
    Point::new(z.re, z.im)
}

impl NormalizedFrame {
    pub fn new(tri: &Triangle, vertex: Vertex) -> Self {
        let (a, b, c) = tri.rotated(vertex);
        let unit = cx(c - a);
        let zb = cx(b - a) / unit;
        let conjugate = zb.im < 0.0;
        let zb = if conjugate { zb.conj() } else { zb };
        NormalizedFrame {
            origin: a,
            unit,
            conjugate,
            b0: zb.norm(),
            beta0: zb.arg(),
        }
    }

    pub fn to_frame(&self, p: Point) -> Complex64 {
        let z = cx(p - self.origin) / self.unit;
        if self.conjugate {
            z.conj()
        } else {
            z
        }
    }

    pub fn to_world(&self, z: Complex64) -> Point {
        self.origin + self.direction_to_world(z)
    }

    /// Image of a displacement (no translation).
    pub fn direction_to_world(&self, z: Complex64) -> Point {
        let z = if self.conjugate { z.conj() } else { z };
        pt(z * self.unit)
    }
}

/// Feet and cevian intersection in the normalized frame for the Miquel
/// point `m·e^{iμ0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm {
    pub b_a: Complex64,
    pub c_a: Complex64,
    pub n_a: Complex64,
}

pub fn normalized_frame_closed_form(b0: f64, beta0: f64, m: f64, mu0: f64) -> Result<ClosedForm> {
    if ![b0, beta0, m, mu0].iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let eps = Tolerance::DEFAULT.relative_eps;
    let s_diff = (mu0 - beta0).sin();
    let s_mu = mu0.sin();
    if m.abs() <= eps {
        return Err(Error::SingularDenominator("m"));
    }
    if s_diff.abs() <= eps {
        return Err(Error::SingularDenominator("sin(mu0-beta0)"));
    }
    if s_mu.abs() <= eps {
        return Err(Error::SingularDenominator("sin(mu0)"));
    }
    let b_a = (b0 * mu0.sin() - m * beta0.sin()) / s_diff;
    let c_a = Complex64::from_polar((m * beta0.sin() + s_diff) / s_mu, beta0);
    let k = b0 / m;
    let n_a = Complex64::new(
        1.0 + b0 * beta0.cos() - k * (mu0 - beta0).cos(),
        b0 * beta0.sin() + k * (mu0 - beta0).sin(),
    );
    Ok(ClosedForm {
        b_a: Complex64::new(b_a, 0.0),
        c_a,
        n_a,
    })
}

fn check_line_angle(frame: &NormalizedFrame, mu0: f64) -> Result<()> {
    let eps = Tolerance::DEFAULT.relative_eps;
    if !mu0.is_finite() {
        return Err(Error::NonFinite);
    }
    if mu0.sin().abs() <= eps || (mu0 - frame.beta0).sin().abs() <= eps {
        return Err(Error::LineAlongSide);
    }
    Ok(())
}

/// Line through the vertex at angle `mu0` from ray AC, measured towards B.
pub fn vertex_line(tri: &Triangle, vertex: Vertex, mu0: f64) -> Result<Line> {
    let frame = NormalizedFrame::new(tri, vertex);
    check_line_angle(&frame, mu0)?;
    Line::new(frame.origin, frame.direction_to_world(Complex64::from_polar(1.0, mu0)))
}

/// Line carrying every cevian intersection `N_A` whose Miquel point lies on
/// the line through the vertex at angle `mu0`: it passes through `B + C − A`
/// parallel to the isogonal of that line.
pub fn isogonal_image_line(tri: &Triangle, vertex: Vertex, mu0: f64) -> Result<Line> {
    let frame = NormalizedFrame::new(tri, vertex);
    check_line_angle(&frame, mu0)?;
    let (a, b, c) = tri.rotated(vertex);
    let dir = Complex64::from_polar(1.0, frame.beta0 - mu0);
    Line::new(b + c - a, frame.direction_to_world(dir))
}

/// Fitted locus of Miquel points for cevian intersections on a line through the vertex.
#[derive(Debug, Clone, PartialEq)]
pub enum IsogonalFit {
    Circle(Circle),
    /// The samples are collinear, e.g. for the median, whose image is the symmedian.
    NearLine(Line),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsogonalCircle {
    pub fit: IsogonalFit,
    /// Miquel points the fit was built from.
    pub samples: Vec<Point>,
}

impl IsogonalCircle {
    pub fn residual(&self, p: Point) -> f64 {
        match &self.fit {
            IsogonalFit::Circle(c) => c.boundary_distance(p),
            IsogonalFit::NearLine(l) => l.distance(p),
        }
    }
}

/// Miquel point of the cevians through `anchor + s·D·direction` of `l`.
pub fn miquel_on_line(tri: &Triangle, vertex: Vertex, l: &Line, s: f64, tol: Tolerance) -> Result<Point> {
    let n = l.point_at(s * tri.diameter());
    let cev = cevians_through(tri, vertex, n, tol)?;
    Ok(forward_miquel(tri, vertex, cev, tol)?.m)
}

const FIT_PARAMETERS: [f64; 10] = [-3.0, -1.6, -0.9, -0.5, -0.25, 0.25, 0.5, 0.9, 1.6, 3.0];

pub fn isogonal_circle(tri: &Triangle, vertex: Vertex, l: &Line, tol: Tolerance) -> Result<IsogonalCircle> {
    let (a, b, c) = tri.rotated(vertex);
    let d = tri.diameter();
    if l.distance(a) > tol.effective(d) {
        return Err(Error::LineNotThroughVertex);
    }
    let l = Line::new(a, l.direction())?;
    for side in [Line::through(a, b)?, Line::through(a, c)?] {
        if l.angle_to(&side) <= tol.relative_eps {
            return Err(Error::LineAlongSide);
        }
    }
    let samples: Vec<Point> = FIT_PARAMETERS
        .iter()
        .filter_map(|&s| miquel_on_line(tri, vertex, &l, s, tol).ok())
        .collect();
    // the most spread-out triple gives the best-conditioned fit
    let mut best: Option<(f64, [Point; 3])> = None;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            for k in j + 1..samples.len() {
                let (p, q, r) = (samples[i], samples[j], samples[k]);
                let span = p.dist(q).min(q.dist(r)).min(r.dist(p));
                if best.is_none_or(|(s, _)| span > s) {
                    best = Some((span, [p, q, r]));
                }
            }
        }
    }
    let Some((span, [p, q, r])) = best else {
        return Err(Error::DegenerateSamples);
    };
    if span <= tol.effective(d) {
        return Err(Error::DegenerateSamples);
    }
    let fit = if orientation(p, q, r, tol) == Orientation::Collinear {
        let (u, w) = farthest_pair(&samples);
        IsogonalFit::NearLine(Line::through(u, w)?)
    } else {
        IsogonalFit::Circle(circumcircle(p, q, r)?)
    };
    Ok(IsogonalCircle { fit, samples })
}

fn farthest_pair(points: &[Point]) -> (Point, Point) {
    let mut best = (0.0, points[0], points[0]);
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            if p.dist(q) > best.0 {
                best = (p.dist(q), p, q);
            }
        }
    }
    (best.1, best.2)
}

/// Inverts `points` about `center` and measures how far the images are from
/// a line: the largest distance to the line through the two farthest images,
/// over their separation.
pub fn inverted_line_residual(points: &[Point], center: Point, power: f64, tol: Tolerance) -> Result<f64> {
    let images = points
        .iter()
        .map(|&p| invert_point(p, center, power, tol))
        .collect::<Result<Vec<_>>>()?;
    if images.len() < 3 {
        return Err(Error::DegenerateSamples);
    }
    let (u, w) = farthest_pair(&images);
    let line = Line::through(u, w).map_err(|_| Error::DegenerateSamples)?;
    let worst = images.iter().map(|&p| line.distance(p)).fold(0.0, f64::max);
    Ok(worst / u.dist(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::intersect_lines;
    use crate::miquel::inverse_miquel;
    use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

    const TOL: Tolerance = Tolerance::DEFAULT;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn acute() -> Triangle {
        Triangle::new(p(0., 0.), p(4., 0.), p(1., 3.)).unwrap()
    }

    #[test]
    fn right_angle_cevians_use_bc() {
        // circumcenter cevians of the 3-4-5 triangle: slopes 7/24 and -24/7
        let t = Triangle::new(p(0., 0.), p(4., 0.), p(0., 3.)).unwrap();
        let cev = CevianPair::from_feet(&t, Vertex::A, p(0., -7. / 6.), p(7. / 8., 0.));
        let g = perpendicularity_equivalence(&t, Vertex::A, cev, TOL).unwrap();
        assert!(g.cevian_angle_gap < 1e-14);
        assert!(g.bc_fallback);
    }

    #[test]
    fn perpendicular_cevians_land_on_omega_tan() {
        let t = acute();
        // N on the circle with diameter BC sees BC at a right angle
        let n = t.b().midpoint(t.c()) + Point::from_polar(t.b().dist(t.c()) / 2.0, -2.0);
        let cev = cevians_through(&t, Vertex::A, n, TOL).unwrap();
        let g = perpendicularity_equivalence(&t, Vertex::A, cev, TOL).unwrap();
        assert!(g.cevian_angle_gap < 1e-12, "{g:?}");
        assert!(g.omega_tan_gap <= 1e-9, "{g:?}");
        assert!(!g.bc_fallback);
    }

    #[test]
    fn sixty_degree_cevians_miss_omega_tan() {
        let t = acute();
        // N sees BC under π/3: on an arc of the circle with chord BC and inscribed angle π/3
        let (b, c) = (t.b(), t.c());
        let r = b.dist(c) / (2.0 * (PI / 3.0).sin());
        let h = (r * r - b.dist(c).powi(2) / 4.0).sqrt();
        let centre = b.midpoint(c) - (c - b).perp().unit().unwrap() * h;
        let n = centre - (c - b).perp().unit().unwrap() * r;
        let cev = cevians_through(&t, Vertex::A, n, TOL).unwrap();
        let g = perpendicularity_equivalence(&t, Vertex::A, cev, TOL).unwrap();
        assert!((g.cevian_angle_gap - PI / 6.0).abs() < 1e-12, "{g:?}");
        assert!(g.omega_tan_gap > 1e-3, "{g:?}");
    }

    #[test]
    fn antiparallel_examples() {
        let t = acute();
        let g = parallel_antiparallel_check(&t, Vertex::A, CevianPair::new(0.3, 0.3), TOL).unwrap();
        assert!(g.parallel_gap < 1e-14 && g.symmedian_gap <= 1e-9, "{g:?}");
        let g = parallel_antiparallel_check(&t, Vertex::A, CevianPair::new(0.5, 0.5), TOL).unwrap();
        assert!(g.symmedian_gap <= 1e-9, "{g:?}");
        let g = parallel_antiparallel_check(&t, Vertex::A, CevianPair::new(0.3, 0.7), TOL).unwrap();
        assert!(g.parallel_gap > 1e-3 && g.symmedian_gap > 1e-3, "{g:?}");
    }

    #[test]
    fn closed_form_worked_example() {
        let cf = normalized_frame_closed_form(1.0, PI / 2.0, 1.0, FRAC_PI_4).unwrap();
        let k = SQRT_2 - 1.0;
        assert!((cf.b_a - Complex64::new(k, 0.0)).norm() < 1e-15);
        assert!((cf.c_a - Complex64::new(0.0, k)).norm() < 1e-15);
        let n = 1.0 - SQRT_2 / 2.0;
        assert!((cf.n_a - Complex64::new(n, n)).norm() < 1e-15);
        // independent oracle: intersect B→B_A and C→C_A directly
        let lb = Line::through(p(0., 1.), p(k, 0.)).unwrap();
        let lc = Line::through(p(1., 0.), p(0., k)).unwrap();
        let direct = intersect_lines(&lb, &lc, TOL).point().unwrap();
        assert!(direct.dist(p(n, n)) < 1e-15);
    }

    #[test]
    fn closed_form_singularities() {
        assert_eq!(
            normalized_frame_closed_form(1.0, 1.0, 1.0, 1.0),
            Err(Error::SingularDenominator("sin(mu0-beta0)"))
        );
        assert_eq!(
            normalized_frame_closed_form(1.0, 1.0, 0.0, 0.5),
            Err(Error::SingularDenominator("m"))
        );
        assert_eq!(
            normalized_frame_closed_form(1.0, 1.0, 1.0, 0.0),
            Err(Error::SingularDenominator("sin(mu0)"))
        );
    }

    #[test]
    fn frame_round_trip_and_orientation() {
        // clockwise triangle: frame is the identity
        let t = Triangle::new(p(0., 0.), p(0., 1.), p(1., 0.)).unwrap();
        let f = NormalizedFrame::new(&t, Vertex::A);
        assert!((f.b0 - 1.0).abs() < 1e-15 && (f.beta0 - PI / 2.0).abs() < 1e-15);
        // counter-clockwise: conjugated
        let t = acute();
        let f = NormalizedFrame::new(&t, Vertex::B);
        assert!(f.beta0 > 0.0 && f.beta0 < PI);
        let q = p(2.5, -1.25);
        assert!(f.to_world(Complex64::new(0.0, 0.0)).dist(t.b()) < 1e-15);
        assert!(f.to_world(f.to_frame(q)).dist(q) < 1e-14);
    }

    #[test]
    fn isogonal_line_example() {
        let t = Triangle::new(p(0., 0.), p(0., 1.), p(1., 0.)).unwrap();
        let l = isogonal_image_line(&t, Vertex::A, FRAC_PI_4).unwrap();
        assert!(l.distance(p(1., 1.)) < 1e-15);
        assert!(l.distance(p(2., 2.)) < 1e-15);
        let n = 1.0 - SQRT_2 / 2.0;
        assert!(l.distance(p(n, n)) < 1e-15);
        assert_eq!(isogonal_image_line(&t, Vertex::A, 0.0), Err(Error::LineAlongSide));
        assert_eq!(isogonal_image_line(&t, Vertex::A, PI / 2.0), Err(Error::LineAlongSide));
    }

    #[test]
    fn geometric_n_on_isogonal_line() {
        let t = acute();
        for v in Vertex::ALL {
            let f = NormalizedFrame::new(&t, v);
            let mu0 = 0.4 * f.beta0;
            let image = isogonal_image_line(&t, v, mu0).unwrap();
            let l = vertex_line(&t, v, mu0).unwrap();
            for s in [0.3, 0.6, 0.9, -0.4] {
                let m = l.point_at(s * t.diameter());
                let cev = inverse_miquel(&t, v, m, TOL).unwrap();
                let cfg = forward_miquel(&t, v, cev, TOL).unwrap();
                assert!(image.distance(cfg.n) <= 1e-9 * t.diameter(), "{v} {s}");
            }
        }
    }

    #[test]
    fn isogonal_circle_holds_out() {
        let t = acute();
        let l = Line::new(t.a(), p(1.0, 0.45)).unwrap();
        let fit = isogonal_circle(&t, Vertex::A, &l, TOL).unwrap();
        let IsogonalFit::Circle(circle) = fit.fit else {
            panic!("expected a circle");
        };
        assert!(circle.boundary_distance(t.a()) <= 1e-8 * t.diameter());
        for s in [-2.2, -1.1, -0.7, -0.35, 0.15, 0.4, 0.7, 1.2, 2.1, 4.0] {
            let m = miquel_on_line(&t, Vertex::A, &l, s, TOL).unwrap();
            assert!(fit.residual(m) <= 1e-8 * t.diameter(), "{s}");
        }
        let res = inverted_line_residual(&fit.samples, t.a(), t.diameter().powi(2), TOL).unwrap();
        assert!(res <= 1e-8, "{res}");
    }

    #[test]
    fn median_gives_symmedian_line() {
        let t = acute();
        let l = Line::through(t.a(), t.b().midpoint(t.c())).unwrap();
        let fit = isogonal_circle(&t, Vertex::A, &l, TOL).unwrap();
        let IsogonalFit::NearLine(line) = fit.fit else {
            panic!("expected a line");
        };
        let sym = symmedian_line(&t, Vertex::A, TOL).unwrap();
        assert!(line.angle_to(&sym) < 1e-10);
    }

    #[test]
    fn isogonal_circle_rejects_bad_lines() {
        let t = acute();
        let off = Line::new(p(0., 1.), p(1., 1.)).unwrap();
        assert_eq!(isogonal_circle(&t, Vertex::A, &off, TOL), Err(Error::LineNotThroughVertex));
        let ab = Line::through(t.a(), t.b()).unwrap();
        assert_eq!(isogonal_circle(&t, Vertex::A, &ab, TOL), Err(Error::LineAlongSide));
    }
}
