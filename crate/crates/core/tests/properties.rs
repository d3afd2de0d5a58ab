//! Randomised invariants checked against oracles written independently of
//! the library's own constructions.

use miquel_core::brocard::{brocard_angles, brocard_data};
use miquel_core::geom::{invert_point, reflect_point_about_line, Line};
use miquel_core::locus::{centre_circle_residuals, Locus, LocusVerdict};
use miquel_core::miquel::{classify_cevians, forward_miquel, inverse_miquel};
use miquel_core::special::{normalized_frame_closed_form, NormalizedFrame};
use miquel_core::symmedian::symmedian_line;
use miquel_core::{CevianKind, CevianPair, Error, Point, Tolerance, Triangle, Vertex};
use proptest::prelude::*;

const TOL: Tolerance = Tolerance::DEFAULT;

/// Circumcentre from the textbook determinant formula.
fn oracle_circumcentre(p: Point, q: Point, r: Point) -> (Point, f64) {
    let d = 2.0 * (p.x * (q.y - r.y) + q.x * (r.y - p.y) + r.x * (p.y - q.y));
    let (p2, q2, r2) = (p.x * p.x + p.y * p.y, q.x * q.x + q.y * q.y, r.x * r.x + r.y * r.y);
    let ux = (p2 * (q.y - r.y) + q2 * (r.y - p.y) + r2 * (p.y - q.y)) / d;
    let uy = (p2 * (r.x - q.x) + q2 * (p.x - r.x) + r2 * (q.x - p.x)) / d;
    let o = Point::new(ux, uy);
    (o, o.dist(p))
}

fn interior_angles(a: Point, b: Point, c: Point) -> [f64; 3] {
    let ang = |p: Point, q: Point, r: Point| {
        let (u, v) = (q - p, r - p);
        (u.x * v.y - u.y * v.x).abs().atan2(u.x * v.x + u.y * v.y)
    };
    [ang(a, b, c), ang(b, c, a), ang(c, a, b)]
}

fn well_shaped() -> impl Strategy<Value = Triangle> {
    let coord = -10.0..10.0f64;
    (coord.clone(), coord.clone(), coord.clone(), coord.clone(), coord.clone(), coord)
        .prop_filter_map("thin or tiny triangle", |(ax, ay, bx, by, cx, cy)| {
            let (a, b, c) = (Point::new(ax, ay), Point::new(bx, by), Point::new(cx, cy));
            let angles = interior_angles(a, b, c);
            let short = a.dist(b).min(b.dist(c)).min(c.dist(a));
            (angles.iter().all(|&t| t > 0.08) && short > 0.5).then(|| Triangle::new(a, b, c).ok())?
        })
}

fn vertex() -> impl Strategy<Value = Vertex> {
    prop_oneof![Just(Vertex::A), Just(Vertex::B), Just(Vertex::C)]
}

/// Cevian parameters kept clear of the excluded values 0 and 1.
fn parameter() -> impl Strategy<Value = f64> {
    (-3.0..3.0f64).prop_filter("near 0 or 1", |t| t.abs() > 0.05 && (t - 1.0).abs() > 0.05)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn miquel_point_lies_on_all_four_circles(tri in well_shaped(), v in vertex(), tb in parameter(), tc in parameter()) {
        let cfg = match forward_miquel(&tri, v, CevianPair::new(tb, tc), TOL) {
            Ok(cfg) => cfg,
            Err(Error::ParallelCevians | Error::TangentAtA) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        let (a, b, c) = tri.rotated(v);
        let d = tri.diameter();
        for (p, q, r) in [(a, b, cfg.b_a), (a, c, cfg.c_a), (c, cfg.b_a, cfg.n), (b, cfg.c_a, cfg.n)] {
            let (o, rad) = oracle_circumcentre(p, q, r);
            // circles through nearly coincident points are ill-conditioned
            if rad > 1e3 * d {
                return Ok(());
            }
            prop_assert!((cfg.m.dist(o) - rad).abs() / d <= 1e-9, "off circle by {}", (cfg.m.dist(o) - rad).abs() / d);
        }
    }

    #[test]
    fn inverse_recovers_cevians(tri in well_shaped(), v in vertex(), tb in parameter(), tc in parameter()) {
        let Ok(cfg) = forward_miquel(&tri, v, CevianPair::new(tb, tc), TOL) else { return Ok(()) };
        // keep M clear of A, where the inverse loses precision
        prop_assume!(cfg.m.dist(tri.vertex(v)) > 1e-2 * tri.diameter());
        let back = inverse_miquel(&tri, v, cfg.m, TOL).unwrap();
        prop_assert!((back.t_b - tb).abs() <= 1e-8 * (1.0 + tb.abs()), "{} vs {tb}", back.t_b);
        prop_assert!((back.t_c - tc).abs() <= 1e-8 * (1.0 + tc.abs()), "{} vs {tc}", back.t_c);
    }

    #[test]
    fn forward_undoes_inverse(tri in well_shaped(), v in vertex(), u in 0.0..1.0f64, w in 0.0..1.0f64) {
        let o = tri.circumcircle();
        let p = Point::new(o.center.x + (3.0 * u - 1.5) * o.radius, o.center.y + (3.0 * w - 1.5) * o.radius);
        let locus = Locus::new(&tri, v, TOL).unwrap();
        prop_assume!(locus.clearance(p) > 1e-3 * tri.diameter());
        let cev = inverse_miquel(&tri, v, p, TOL).unwrap();
        let cfg = match forward_miquel(&tri, v, cev, TOL) {
            Ok(cfg) => cfg,
            Err(Error::ParallelCevians) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        prop_assert!(cfg.m.dist(p) / tri.diameter() <= 1e-8);
    }

    #[test]
    fn locus_matches_inverse_map(tri in well_shaped(), v in vertex(), u in 0.0..1.0f64, w in 0.0..1.0f64) {
        let o = tri.circumcircle();
        let p = Point::new(o.center.x + (3.0 * u - 1.5) * o.radius, o.center.y + (3.0 * w - 1.5) * o.radius);
        let locus = Locus::new(&tri, v, TOL).unwrap();
        prop_assume!(locus.clearance(p) > 1e-6 * tri.diameter());
        let verdict = locus.classify(p);
        prop_assert_ne!(verdict, LocusVerdict::Boundary);
        let cev = inverse_miquel(&tri, v, p, TOL).unwrap();
        let kinds = classify_cevians(cev, TOL).unwrap();
        let internal = kinds == (CevianKind::Internal, CevianKind::Internal);
        prop_assert_eq!(verdict.is_member(), internal, "{:?} at {:?} with {:?}", verdict, p, cev);
    }

    #[test]
    fn inversion_is_an_involution(cx in -5.0..5.0f64, cy in -5.0..5.0f64, px in -5.0..5.0f64, py in -5.0..5.0f64, k in 0.1..10.0f64) {
        let (c, p) = (Point::new(cx, cy), Point::new(px, py));
        prop_assume!(c.dist(p) > 1e-2);
        let q = invert_point(p, c, k, TOL).unwrap();
        // |CP|·|CQ| = k along the same ray
        prop_assert!(((q - c).norm() * (p - c).norm() - k).abs() <= 1e-9 * k);
        prop_assert!((q - c).cross(p - c).abs() <= 1e-9 * (q - c).norm() * (p - c).norm());
        let back = invert_point(q, c, k, TOL).unwrap();
        prop_assert!(back.dist(p) <= 1e-9 * (1.0 + p.dist(c)));
    }

    #[test]
    fn reflection_is_an_isometric_involution(ax in -5.0..5.0f64, ay in -5.0..5.0f64, th in 0.0..6.3f64, px in -5.0..5.0f64, py in -5.0..5.0f64) {
        let l = Line::new(Point::new(ax, ay), Point::from_polar(1.0, th)).unwrap();
        let p = Point::new(px, py);
        let q = reflect_point_about_line(p, &l);
        prop_assert!((l.distance(q) - l.distance(p)).abs() <= 1e-12 * (1.0 + p.norm()));
        prop_assert!(reflect_point_about_line(q, &l).dist(p) <= 1e-12 * (1.0 + p.norm()));
    }

    #[test]
    fn axis_is_the_symmedian(tri in well_shaped(), v in vertex()) {
        let (a, b, c) = tri.rotated(v);
        let axis = symmedian_line(&tri, v, TOL).unwrap();
        // oracle: the symmedian meets BC at the point dividing it as AB² : AC²
        let (ab2, ac2) = ((b - a).norm_sq(), (c - a).norm_sq());
        let k = b.lerp(c, ab2 / (ab2 + ac2));
        prop_assert!(axis.distance(a) <= 1e-12 * tri.diameter());
        prop_assert!(axis.distance(k) <= 1e-10 * tri.diameter());
    }

    #[test]
    fn centres_are_concyclic(tri in well_shaped(), v in vertex()) {
        match centre_circle_residuals(&tri, v, TOL) {
            Ok(r) => prop_assert!(r.max() <= 1e-9, "{r:?}"),
            Err(Error::DegenerateOI) => {}
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }

    #[test]
    fn brocard_points_match_the_cotangent_identity(tri in well_shaped()) {
        let data = match brocard_data(&tri, TOL) {
            Ok(d) => d,
            Err(Error::NearEquilateralDegeneracy) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        let [x, y, z] = interior_angles(tri.a(), tri.b(), tri.c());
        let omega = (1.0 / (x.tan().recip() + y.tan().recip() + z.tan().recip())).atan();
        let (first, second) = brocard_angles(&tri, &data.points).unwrap();
        for g in first.iter().chain(second.iter()) {
            prop_assert!((g - omega).abs() <= 1e-9, "{g} vs {omega}");
        }
        let (o, _) = oracle_circumcentre(tri.a(), tri.b(), tri.c());
        let d = tri.diameter();
        prop_assert!(data.circle.boundary_distance(o) / d <= 1e-9);
        prop_assert!(data.circle.boundary_distance(data.points.first) / d <= 1e-9);
        prop_assert!(data.circle.boundary_distance(data.points.second) / d <= 1e-9);
    }

    #[test]
    fn closed_form_matches_construction(tri in well_shaped(), v in vertex(), mu0 in 0.05..3.09f64, m in 0.2..3.0f64) {
        let frame = NormalizedFrame::new(&tri, v);
        prop_assume!((mu0 - frame.beta0).abs() > 0.05);
        let (a, _, c) = tri.rotated(v);
        let scale = a.dist(c);
        let world_m = frame.to_world(num_complex::Complex64::from_polar(m, mu0));
        let locus = Locus::new(&tri, v, TOL).unwrap();
        prop_assume!(locus.clearance(world_m) > 1e-3 * tri.diameter());
        let Ok(cf) = normalized_frame_closed_form(frame.b0, frame.beta0, m, mu0) else { return Ok(()) };
        let cev = inverse_miquel(&tri, v, world_m, TOL).unwrap();
        let Ok(cfg) = forward_miquel(&tri, v, cev, TOL) else { return Ok(()) };
        let d = tri.diameter();
        prop_assert!(frame.to_world(cf.b_a).dist(cfg.b_a) <= 1e-8 * d.max(cfg.b_a.dist(a)));
        prop_assert!(frame.to_world(cf.c_a).dist(cfg.c_a) <= 1e-8 * d.max(cfg.c_a.dist(a)));
        prop_assert!(frame.to_world(cf.n_a).dist(cfg.n) <= 1e-8 * d.max(cfg.n.dist(a)), "scale {scale}");
    }
}
