//! Named property suites over seeded random scenes.
//!
//! Each property generates scenes, evaluates one residual per scene and
//! compares it with a fixed threshold. The first failing scene of each
//! property is kept so it can be written out and replayed.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use miquel_core::brocard::{brocard_angles, brocard_circle, brocard_points};
use miquel_core::centers::{center_case, classic_center, CenterKind};
use miquel_core::geom::{intersect_lines, Line};
use miquel_core::locus::{auxiliary_data, centre_circle_residuals, Locus};
use miquel_core::miquel::{classify_cevians, forward_miquel, inverse_miquel, side_lemma_check};
use miquel_core::special::{
    inverted_line_residual, isogonal_circle, isogonal_image_line, miquel_on_line, normalized_frame_closed_form,
    parallel_antiparallel_check, perpendicularity_equivalence, vertex_line, NormalizedFrame,
};
use miquel_core::symmedian::{omega_tan, symmedian_line};
use miquel_core::{CevianKind, CevianPair, Error, Point, Triangle};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::format::num;
use crate::sample;
use crate::scene::{Payload, Scene};

/// Clearance from every bounding circle and side line required of sampled
/// Miquel points, as a fraction of the diameter.
pub const MARGIN: f64 = 1e-6;

pub const SUITES: [&str; 14] = [
    "concurrency",
    "roundtrip",
    "locus",
    "centre-circle",
    "brocard-circle",
    "brocard-points",
    "axis",
    "perpendicular",
    "antiparallel",
    "isogonal-line",
    "isogonal-circle",
    "centers",
    "tangency-limit",
    "side-lemma",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownSuite(pub String);

impl fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnknownSuite({})", self.0)
    }
}

impl std::error::Error for UnknownSuite {}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Residual(f64),
    /// The scene does not meet the property's precondition.
    Skip,
    /// An error the property does not expect.
    Error(Error),
}

type Generate = fn(&mut ChaCha8Rng) -> Option<Scene>;
type Evaluate = fn(&Scene) -> Outcome;

pub struct Property {
    pub name: &'static str,
    pub threshold: f64,
    generate: Generate,
    evaluate: Evaluate,
}

impl Property {
    pub fn evaluate(&self, scene: &Scene) -> Outcome {
        (self.evaluate)(scene)
    }

    pub fn passes(&self, outcome: &Outcome) -> bool {
        match outcome {
            Outcome::Residual(r) => *r <= self.threshold,
            Outcome::Skip => true,
            Outcome::Error(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub threshold: f64,
    pub evaluated: usize,
    pub skipped: usize,
    pub failures: usize,
    pub worst: f64,
    pub failing: Option<(Scene, String)>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.evaluated > 0
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: worst {} (threshold {}), {} evaluated, {} skipped, {} failed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            num(self.worst),
            num(self.threshold),
            self.evaluated,
            self.skipped,
            self.failures
        )
    }
}

fn scene(tri: Triangle, vertex: miquel_core::Vertex, payload: Payload) -> Scene {
    Scene::new(tri, vertex, payload)
}

fn random_scene(rng: &mut ChaCha8Rng, payload: impl FnOnce(&mut ChaCha8Rng, &Triangle) -> Payload) -> Scene {
    let tri = sample::triangle(rng);
    let v = sample::vertex(rng);
    let p = payload(rng, &tri);
    scene(tri, v, p)
}

fn outcome(r: miquel_core::Result<f64>, expected: &[fn(&Error) -> bool]) -> Outcome {
    match r {
        Ok(x) => Outcome::Residual(x),
        Err(e) if expected.iter().any(|f| f(&e)) => Outcome::Skip,
        Err(e) => Outcome::Error(e),
    }
}

fn degenerate_map(e: &Error) -> bool {
    matches!(
        e,
        Error::ExcludedCevian(_) | Error::ParallelCevians | Error::TangentAtA | Error::InadmissiblePoint(_)
    )
}

fn margin_ok(s: &Scene, p: Point) -> miquel_core::Result<bool> {
    let locus = Locus::new(&s.triangle, s.vertex, s.tolerance)?;
    Ok(locus.clearance(p) >= MARGIN * s.triangle.diameter())
}

fn triangle_payload(_: &mut ChaCha8Rng, _: &Triangle) -> Payload {
    Payload::Center(CenterKind::Circumcenter)
}

fn random_cevians(rng: &mut ChaCha8Rng, _: &Triangle) -> Payload {
    Payload::Cevians(CevianPair::new(rng.random_range(-2.0..3.0), rng.random_range(-2.0..3.0)))
}

fn random_point(rng: &mut ChaCha8Rng, t: &Triangle) -> Payload {
    Payload::Point(sample::point_near(rng, t))
}

fn acute_at(s: &Scene) -> bool {
    s.triangle.angle(s.vertex) < FRAC_PI_2 - 1e-3
}

// ---- properties ----

fn gen_concurrency(rng: &mut ChaCha8Rng) -> Option<Scene> {
    Some(random_scene(rng, random_cevians))
}

fn eval_concurrency(s: &Scene) -> Outcome {
    let Payload::Cevians(c) = s.payload else { return Outcome::Skip };
    outcome(
        forward_miquel(&s.triangle, s.vertex, c, s.tolerance).map(|cfg| cfg.residual),
        &[degenerate_map],
    )
}

fn gen_point(rng: &mut ChaCha8Rng) -> Option<Scene> {
    Some(random_scene(rng, random_point))
}

fn eval_roundtrip_point(s: &Scene) -> Outcome {
    let Payload::Point(p) = s.payload else { return Outcome::Skip };
    let r = (|| {
        if !margin_ok(s, p)? {
            return Ok(None);
        }
        let cev = inverse_miquel(&s.triangle, s.vertex, p, s.tolerance)?;
        let cfg = forward_miquel(&s.triangle, s.vertex, cev, s.tolerance)?;
        Ok(Some(cfg.m.dist(p) / s.triangle.diameter()))
    })();
    skip_none(r)
}

fn skip_none(r: miquel_core::Result<Option<f64>>) -> Outcome {
    match r {
        Ok(Some(x)) => Outcome::Residual(x),
        Ok(None) => Outcome::Skip,
        Err(e) => Outcome::Error(e),
    }
}

fn eval_roundtrip_cevians(s: &Scene) -> Outcome {
    let Payload::Cevians(c) = s.payload else { return Outcome::Skip };
    let cfg = match forward_miquel(&s.triangle, s.vertex, c, s.tolerance) {
        Ok(cfg) => cfg,
        Err(e) if degenerate_map(&e) => return Outcome::Skip,
        Err(e) => return Outcome::Error(e),
    };
    let r = (|| {
        if !margin_ok(s, cfg.m)? {
            return Ok(None);
        }
        let back = inverse_miquel(&s.triangle, s.vertex, cfg.m, s.tolerance)?;
        let gap = |a: f64, b: f64| (a - b).abs() / a.abs().max(1.0);
        Ok(Some(gap(c.t_b, back.t_b).max(gap(c.t_c, back.t_c))))
    })();
    skip_none(r)
}

fn eval_locus(s: &Scene) -> Outcome {
    let Payload::Point(p) = s.payload else { return Outcome::Skip };
    let r = (|| {
        let locus = Locus::new(&s.triangle, s.vertex, s.tolerance)?;
        if locus.clearance(p) < MARGIN * s.triangle.diameter() {
            return Ok(None);
        }
        let analytic = locus.classify(p).is_member();
        let cev = inverse_miquel(&s.triangle, s.vertex, p, s.tolerance)?;
        let empirical = classify_cevians(cev, s.tolerance)? == (CevianKind::Internal, CevianKind::Internal);
        Ok(Some(if analytic == empirical { 0.0 } else { 1.0 }))
    })();
    skip_none(r)
}

fn gen_triangle(rng: &mut ChaCha8Rng) -> Option<Scene> {
    Some(random_scene(rng, triangle_payload))
}

fn eval_centre_circle(s: &Scene) -> Outcome {
    let r = (|| {
        let aux = auxiliary_data(&s.triangle, s.vertex, s.tolerance)?;
        let d = s.triangle.diameter();
        if aux.main_centre.dist(s.triangle.circumcircle().center) <= MARGIN * d {
            return Ok(None);
        }
        Ok(Some(centre_circle_residuals(&s.triangle, s.vertex, s.tolerance)?.max()))
    })();
    skip_none(r)
}

fn eval_brocard_circle(s: &Scene) -> Outcome {
    let circ = s.triangle.circumcircle();
    outcome(
        brocard_circle(&s.triangle, s.tolerance).map(|c| c.boundary_distance(circ.center) / circ.radius),
        &[|e| *e == Error::NearEquilateralDegeneracy],
    )
}

fn eval_brocard_points(s: &Scene) -> Outcome {
    let r = (|| {
        let pts = brocard_points(&s.triangle, s.tolerance)?;
        let (g, h) = brocard_angles(&s.triangle, &pts)?;
        let all: Vec<f64> = g.iter().chain(&h).copied().collect();
        let spread = all.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x)) - all.iter().fold(f64::INFINITY, |m, &x| m.min(x));
        Ok(pts.first_residual.max(pts.second_residual).max(spread))
    })();
    outcome(r, &[])
}

fn eval_axis(s: &Scene) -> Outcome {
    let r = (|| {
        let axis = auxiliary_data(&s.triangle, s.vertex, s.tolerance)?.axis;
        Ok(axis.angle_to(&symmedian_line(&s.triangle, s.vertex, s.tolerance)?))
    })();
    outcome(r, &[])
}

fn gen_acute(rng: &mut ChaCha8Rng, payload: fn(&mut ChaCha8Rng, &Scene) -> Option<Payload>) -> Option<Scene> {
    let mut s = random_scene(rng, triangle_payload);
    if !acute_at(&s) {
        return None;
    }
    s.payload = payload(rng, &s)?;
    Some(s)
}

fn gen_perpendicular(rng: &mut ChaCha8Rng) -> Option<Scene> {
    gen_acute(rng, |rng, s| {
        let (_, b, c) = s.triangle.rotated(s.vertex);
        let n = b.midpoint(c) + Point::from_polar(b.dist(c) / 2.0, rng.random_range(0.0..TAU));
        let cev = miquel_core::miquel::cevians_through(&s.triangle, s.vertex, n, s.tolerance).ok()?;
        Some(Payload::Cevians(cev))
    })
}

fn eval_perpendicular(s: &Scene) -> Outcome {
    let Payload::Cevians(c) = s.payload else { return Outcome::Skip };
    if !acute_at(s) {
        return Outcome::Skip;
    }
    let r = perpendicularity_equivalence(&s.triangle, s.vertex, c, s.tolerance)
        .map(|g| (g.cevian_angle_gap <= 1e-10 && !g.bc_fallback).then_some(g.omega_tan_gap));
    match r {
        Err(e) if degenerate_map(&e) => Outcome::Skip,
        r => skip_none(r),
    }
}

fn gen_on_omega_tan(rng: &mut ChaCha8Rng) -> Option<Scene> {
    gen_acute(rng, |rng, s| {
        let w = omega_tan(&s.triangle, s.vertex, s.tolerance).ok()?;
        Some(Payload::Point(w.point_at_angle(rng.random_range(0.0..TAU))))
    })
}

fn eval_perpendicular_converse(s: &Scene) -> Outcome {
    let Payload::Point(p) = s.payload else { return Outcome::Skip };
    if !acute_at(s) {
        return Outcome::Skip;
    }
    let r = (|| {
        let w = omega_tan(&s.triangle, s.vertex, s.tolerance)?;
        let d = s.triangle.diameter();
        if w.boundary_distance(p) > 1e-12 * w.radius.max(d) || !margin_ok(s, p)? {
            return Ok(None);
        }
        let cev = inverse_miquel(&s.triangle, s.vertex, p, s.tolerance)?;
        Ok(Some(perpendicularity_equivalence(&s.triangle, s.vertex, cev, s.tolerance)?.cevian_angle_gap))
    })();
    skip_none(r)
}

fn gen_equal_parameters(rng: &mut ChaCha8Rng) -> Option<Scene> {
    Some(random_scene(rng, |rng, _| {
        let t = rng.random_range(-2.0..3.0);
        Payload::Cevians(CevianPair::new(t, t))
    }))
}

fn eval_antiparallel(s: &Scene) -> Outcome {
    let Payload::Cevians(c) = s.payload else { return Outcome::Skip };
    let r = parallel_antiparallel_check(&s.triangle, s.vertex, c, s.tolerance)
        .map(|g| (g.parallel_gap <= 1e-10).then_some(g.symmedian_gap));
    match r {
        Err(e) if degenerate_map(&e) => Outcome::Skip,
        r => skip_none(r),
    }
}

fn gen_on_symmedian(rng: &mut ChaCha8Rng) -> Option<Scene> {
    let mut s = random_scene(rng, triangle_payload);
    let l = symmedian_line(&s.triangle, s.vertex, s.tolerance).ok()?;
    s.payload = Payload::Point(l.point_at(rng.random_range(-2.0..2.0) * s.triangle.diameter()));
    Some(s)
}

fn eval_antiparallel_converse(s: &Scene) -> Outcome {
    let Payload::Point(p) = s.payload else { return Outcome::Skip };
    let r = (|| {
        let l = symmedian_line(&s.triangle, s.vertex, s.tolerance)?;
        if l.distance(p) > 1e-12 * s.triangle.diameter() || !margin_ok(s, p)? {
            return Ok(None);
        }
        let cev = inverse_miquel(&s.triangle, s.vertex, p, s.tolerance)?;
        Ok(Some(parallel_antiparallel_check(&s.triangle, s.vertex, cev, s.tolerance)?.parallel_gap))
    })();
    skip_none(r)
}

fn eval_isogonal_line(s: &Scene) -> Outcome {
    let Payload::Point(p) = s.payload else { return Outcome::Skip };
    let r = (|| {
        if !margin_ok(s, p)? {
            return Ok(None);
        }
        let (tri, v, tol) = (&s.triangle, s.vertex, s.tolerance);
        let frame = NormalizedFrame::new(tri, v);
        let z = frame.to_frame(p);
        let (m, mu0) = (z.norm(), z.arg());
        let cf = match normalized_frame_closed_form(frame.b0, frame.beta0, m, mu0) {
            Ok(cf) => cf,
            Err(Error::SingularDenominator(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let cfg = forward_miquel(tri, v, inverse_miquel(tri, v, p, tol)?, tol)?;
        let rel = |w: Complex64, exact: Complex64| (w - exact).norm() / exact.norm().max(1.0);
        let dual = rel(frame.to_frame(cfg.n), cf.n_a)
            .max(rel(frame.to_frame(cfg.b_a), cf.b_a))
            .max(rel(frame.to_frame(cfg.c_a), cf.c_a));
        let image = isogonal_image_line(tri, v, mu0)?;
        let on_line = image.distance(cfg.n) / tri.diameter().max(cfg.n.dist(image.anchor()));
        Ok(Some(dual.max(on_line)))
    })();
    match r {
        Err(e) if degenerate_map(&e) || e == Error::LineAlongSide => Outcome::Skip,
        r => skip_none(r),
    }
}

fn gen_line_angle(rng: &mut ChaCha8Rng) -> Option<Scene> {
    let mut s = random_scene(rng, triangle_payload);
    let beta0 = NormalizedFrame::new(&s.triangle, s.vertex).beta0;
    // angles strictly between the sides or beyond them, away from both
    let mu0 = rng.random_range(0.05..PI - 0.05);
    if (mu0 - beta0).abs() < 0.05 {
        return None;
    }
    s.payload = Payload::LineAngle(mu0);
    Some(s)
}

/// Parameters along the line for held-out samples, disjoint from the fit set.
const HELD_OUT: [f64; 10] = [-2.2, -1.1, -0.7, -0.35, 0.15, 0.4, 0.7, 1.2, 2.1, 4.0];

fn eval_isogonal_circle(s: &Scene) -> Outcome {
    let Payload::LineAngle(mu0) = s.payload else { return Outcome::Skip };
    let r = (|| {
        let (tri, v, tol) = (&s.triangle, s.vertex, s.tolerance);
        let (a, _, _) = tri.rotated(v);
        let d = tri.diameter();
        let l = vertex_line(tri, v, mu0)?;
        let fit = isogonal_circle(tri, v, &l, tol)?;
        let held: Vec<Point> = HELD_OUT
            .iter()
            .filter_map(|&t| miquel_on_line(tri, v, &l, t, tol).ok())
            .collect();
        if held.len() < 5 {
            return Ok(None);
        }
        let on_circle = held.iter().map(|&m| fit.residual(m) / d).fold(0.0, f64::max);
        let mut all = fit.samples.clone();
        all.extend(&held);
        let inverted = inverted_line_residual(&all, a, d * d, tol)?;
        Ok(Some(on_circle.max(inverted)))
    })();
    match r {
        Err(Error::DegenerateSamples | Error::LineAlongSide) => Outcome::Skip,
        r => skip_none(r),
    }
}

fn gen_center(rng: &mut ChaCha8Rng) -> Option<Scene> {
    Some(random_scene(rng, |rng, _| {
        Payload::Center(CenterKind::ALL[rng.random_range(0..3)])
    }))
}

fn eval_centers(s: &Scene) -> Outcome {
    let Payload::Center(kind) = s.payload else { return Outcome::Skip };
    let r = (|| {
        let p = classic_center(&s.triangle, kind);
        if !margin_ok(s, p)? {
            return Ok(None);
        }
        Ok(Some(center_case(&s.triangle, s.vertex, kind, s.tolerance)?.worst()))
    })();
    match r {
        Err(
            Error::RightAngleAtVertex | Error::BisectorParallelToSide | Error::ExcludedCevian(_) | Error::InadmissiblePoint(_),
        ) => Outcome::Skip,
        r => skip_none(r),
    }
}

fn gen_direction(rng: &mut ChaCha8Rng) -> Option<Scene> {
    Some(random_scene(rng, |rng, _| Payload::LineAngle(rng.random_range(0.0..PI))))
}

/// Slope of `log |M − A|` against `log ε` as the two cevians approach a
/// common direction, the payload angle measured from the x axis.
pub fn tangency_slope(s: &Scene) -> miquel_core::Result<Option<f64>> {
    let Payload::LineAngle(phi) = s.payload else { return Ok(None) };
    let (tri, v, tol) = (&s.triangle, s.vertex, s.tolerance);
    let (a, b, c) = tri.rotated(v);
    let (ab, ac) = (Line::through(a, b)?, Line::through(a, c)?);
    let dir = Point::from_polar(1.0, phi);
    let probe = Line::new(a, dir)?;
    if probe.angle_to(&ab) < 0.05 || probe.angle_to(&ac) < 0.05 {
        return Ok(None);
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 2..=6 {
        let eps = 10f64.powi(-k);
        let foot = |from: Point, d: Point, side: &Line| intersect_lines(&Line::new(from, d)?, side, tol).point().ok_or(Error::ParallelCevians);
        let b_a = foot(b, dir, &ac)?;
        let c_a = foot(c, dir.rotate(eps), &ab)?;
        let cev = CevianPair::from_feet(tri, v, b_a, c_a);
        let cfg = forward_miquel(tri, v, cev, tol)?;
        xs.push(eps.ln());
        ys.push((cfg.m.dist(a) / tri.diameter()).ln());
    }
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(Some(sxy / sxx))
}

fn eval_tangency(s: &Scene) -> Outcome {
    match tangency_slope(s) {
        Ok(Some(slope)) => Outcome::Residual((slope - 1.0).abs()),
        Ok(None) => Outcome::Skip,
        Err(e) if degenerate_map(&e) => Outcome::Skip,
        Err(e) => Outcome::Error(e),
    }
}

fn gen_side_lemma(rng: &mut ChaCha8Rng) -> Option<Scene> {
    Some(random_scene(rng, |rng, t| {
        if rng.random::<bool>() {
            // a point on one of the three side lines, which is BC for one vertex choice
            let (p, q) = [(t.b(), t.c()), (t.c(), t.a()), (t.a(), t.b())][rng.random_range(0..3)];
            Payload::Point(p.lerp(q, rng.random_range(-1.0..2.0)))
        } else {
            random_point(rng, t)
        }
    }))
}

fn eval_side_lemma(s: &Scene) -> Outcome {
    let Payload::Point(p) = s.payload else { return Outcome::Skip };
    let r = (|| {
        if !margin_ok(s, p)? {
            return Ok(None);
        }
        let cev = inverse_miquel(&s.triangle, s.vertex, p, s.tolerance)?;
        let cfg = forward_miquel(&s.triangle, s.vertex, cev, s.tolerance)?;
        let lemma = side_lemma_check(&cfg, s.tolerance)?;
        // near BC but not on it, the two flags switch at different distances
        if (1e-11..1e-7).contains(&lemma.bc_gap) {
            return Ok(None);
        }
        Ok(Some(if lemma.agrees() { 0.0 } else { 1.0 }))
    })();
    match r {
        Err(e) if degenerate_map(&e) => Outcome::Skip,
        r => skip_none(r),
    }
}

pub fn properties(suite: &str) -> Result<Vec<Property>, UnknownSuite> {
    let p = |name, threshold, generate, evaluate| Property {
        name,
        threshold,
        generate,
        evaluate,
    };
    Ok(match suite {
        "concurrency" => vec![p("concurrency", 1e-9, gen_concurrency as Generate, eval_concurrency as Evaluate)],
        "roundtrip" => vec![
            p("roundtrip-point", 1e-8, gen_point, eval_roundtrip_point),
            p("roundtrip-cevians", 1e-8, gen_concurrency, eval_roundtrip_cevians),
        ],
        "locus" => vec![p("locus", 0.0, gen_point, eval_locus)],
        "centre-circle" => vec![p("centre-circle", 1e-9, gen_triangle, eval_centre_circle)],
        "brocard-circle" => vec![p("brocard-circle", 1e-9, gen_triangle, eval_brocard_circle)],
        "brocard-points" => vec![p("brocard-points", 1e-9, gen_triangle, eval_brocard_points)],
        "axis" => vec![p("axis", 1e-10, gen_triangle, eval_axis)],
        "perpendicular" => vec![
            p("perpendicular", 1e-9, gen_perpendicular, eval_perpendicular),
            p("perpendicular-converse", 1e-8, gen_on_omega_tan, eval_perpendicular_converse),
        ],
        "antiparallel" => vec![
            p("antiparallel", 1e-9, gen_equal_parameters, eval_antiparallel),
            p("antiparallel-converse", 1e-8, gen_on_symmedian, eval_antiparallel_converse),
        ],
        "isogonal-line" => vec![p("isogonal-line", 1e-9, gen_point, eval_isogonal_line)],
        "isogonal-circle" => vec![p("isogonal-circle", 1e-8, gen_line_angle, eval_isogonal_circle)],
        "centers" => vec![p("centers", 1e-8, gen_center, eval_centers)],
        "tangency-limit" => vec![p("tangency-limit", 0.2, gen_direction, eval_tangency)],
        "side-lemma" => vec![p("side-lemma", 0.0, gen_side_lemma, eval_side_lemma)],
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                all.extend(properties(s)?);
            }
            all
        }
        other => return Err(UnknownSuite(other.to_string())),
    })
}

fn run_property(prop: &Property, seed: u64, samples: usize) -> PropertyResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scenes = Vec::with_capacity(samples);
    // generators may reject; cap the attempts so a bad generator cannot spin forever
    for _ in 0..samples * 20 {
        if scenes.len() == samples {
            break;
        }
        if let Some(mut s) = (prop.generate)(&mut rng) {
            s.seed = seed;
            scenes.push(s);
        }
    }
    let outcomes: Vec<Outcome> = scenes.par_iter().map(|s| prop.evaluate(s)).collect();
    let mut res = PropertyResult {
        name: prop.name,
        threshold: prop.threshold,
        evaluated: 0,
        skipped: 0,
        failures: 0,
        worst: 0.0,
        failing: None,
    };
    for (s, o) in scenes.iter().zip(&outcomes) {
        match o {
            Outcome::Skip => res.skipped += 1,
            Outcome::Residual(r) => {
                res.evaluated += 1;
                res.worst = res.worst.max(*r);
            }
            Outcome::Error(_) => {
                res.evaluated += 1;
                res.worst = f64::INFINITY;
            }
        }
        if !prop.passes(o) {
            res.failures += 1;
            if res.failing.is_none() {
                let why = match o {
                    Outcome::Residual(r) => format!("residual {}", num(*r)),
                    Outcome::Error(e) => e.to_string(),
                    Outcome::Skip => unreachable!(),
                };
                res.failing = Some((s.clone(), why));
            }
        }
    }
    res
}

/// Runs every property of `suite` on `samples` generated scenes each.
pub fn run_suite(suite: &str, seed: u64, samples: usize) -> Result<Vec<PropertyResult>, UnknownSuite> {
    Ok(properties(suite)?
        .iter()
        .map(|p| run_property(p, seed, samples))
        .collect())
}

/// Evaluates the properties of `suite` on a single scene.
pub fn replay(suite: &str, scene: &Scene) -> Result<Vec<(&'static str, bool, Outcome)>, UnknownSuite> {
    Ok(properties(suite)?
        .iter()
        .map(|p| {
            let o = p.evaluate(scene);
            (p.name, p.passes(&o), o)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nosuch", 0, 1).unwrap_err(), UnknownSuite("nosuch".into()));
        assert_eq!(UnknownSuite("nosuch".into()).to_string(), "UnknownSuite(nosuch)");
    }

    #[test]
    fn every_suite_passes_small() {
        for suite in SUITES {
            for r in run_suite(suite, 5, 60).unwrap() {
                assert!(r.passed(), "{r} {:?}", r.failing);
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_suite("roundtrip", 9, 50).unwrap(), run_suite("roundtrip", 9, 50).unwrap());
    }

    #[test]
    fn replay_matches_run() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = gen_concurrency(&mut rng).unwrap();
        let text = s.to_text();
        let back = crate::scene::parse_scene(&text).unwrap();
        let a = replay("concurrency", &s).unwrap();
        let b = replay("concurrency", &back).unwrap();
        assert_eq!(a, b);
    }
}
