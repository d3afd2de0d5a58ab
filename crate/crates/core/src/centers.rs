//! Cevian pairs whose Miquel point is the incenter, orthocenter or circumcenter.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geom::{intersect_lines, Line, LineIntersection, Point, Tolerance, Triangle, Vertex};
use crate::miquel::{forward_miquel, inverse_miquel, CevianPair, MiquelConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CenterKind {
    Incenter,
    Orthocenter,
    Circumcenter,
}

impl CenterKind {
    pub const ALL: [CenterKind; 3] = [CenterKind::Incenter, CenterKind::Orthocenter, CenterKind::Circumcenter];

    pub fn as_str(self) -> &'static str {
        match self {
            CenterKind::Incenter => "incenter",
            CenterKind::Orthocenter => "orthocenter",
            CenterKind::Circumcenter => "circumcenter",
        }
    }
}

impl fmt::Display for CenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CenterKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CenterKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown center `{s}`"))
    }
}

pub fn classic_center(tri: &Triangle, kind: CenterKind) -> Point {
    let (a, b, c) = (tri.a(), tri.b(), tri.c());
    match kind {
        CenterKind::Incenter => {
            let (la, lb, lc) = (b.dist(c), c.dist(a), a.dist(b));
            (a * la + b * lb + c * lc) / (la + lb + lc)
        }
        CenterKind::Circumcenter => tri.circumcircle().center,
        CenterKind::Orthocenter => a + b + c - tri.circumcircle().center * 2.0,
    }
}

/// A direct construction of the cevians for a centre, checked against the
/// forward and inverse maps.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterCaseReport {
    pub kind: CenterKind,
    pub cevians: CevianPair,
    pub config: MiquelConfiguration,
    /// Relative residuals of the length (or incidence) relations that characterise the case.
    pub length_residuals: Vec<f64>,
    /// `|m − centre|` over the diameter.
    pub center_gap: f64,
    /// Distance between directly constructed feet and those from the inverse map, over the diameter.
    pub construction_gap: f64,
    /// `N_A` in the circumcenter case.
    pub extra: Option<Point>,
}

impl CenterCaseReport {
    pub fn worst(&self) -> f64 {
        self.length_residuals
            .iter()
            .fold(self.center_gap.max(self.construction_gap), |m, &r| m.max(r))
    }
}

fn finish(
    tri: &Triangle,
    vertex: Vertex,
    kind: CenterKind,
    direct: (Point, Point),
    tol: Tolerance,
) -> Result<(CevianPair, MiquelConfiguration, f64, f64)> {
    let center = classic_center(tri, kind);
    let d = tri.diameter();
    let cevians = CevianPair::from_feet(tri, vertex, direct.0, direct.1);
    let config = forward_miquel(tri, vertex, cevians, tol)?;
    let inverse = inverse_miquel(tri, vertex, center, tol)?;
    let (a, b, c) = tri.rotated(vertex);
    let gap = a.lerp(c, inverse.t_b).dist(direct.0).max(a.lerp(b, inverse.t_c).dist(direct.1));
    Ok((cevians, config, config.m.dist(center) / d, gap / d))
}

/// Feet at distance `|BC|` from the opposite vertex, towards A.
pub fn incenter_case(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Result<CenterCaseReport> {
    let (a, b, c) = tri.rotated(vertex);
    let side = b.dist(c);
    let towards = |from: Point| from + (a - from).unit().expect("nondegenerate triangle") * side;
    let (b_a, c_a) = (towards(c), towards(b));
    let (cevians, config, center_gap, construction_gap) = finish(tri, vertex, CenterKind::Incenter, (b_a, c_a), tol)?;
    let length_residuals = vec![
        (b.dist(config.c_a) - side).abs() / side,
        (c.dist(config.b_a) - side).abs() / side,
    ];
    Ok(CenterCaseReport {
        kind: CenterKind::Incenter,
        cevians,
        config,
        length_residuals,
        center_gap,
        construction_gap,
        extra: None,
    })
}

/// One intersection of an angle bisector from B with one from C.
#[derive(Debug, Clone, PartialEq)]
pub struct BisectorCandidate {
    pub b_internal: bool,
    pub c_internal: bool,
    pub point: Result<Point>,
}

fn bisector(at: Point, p: Point, q: Point, internal: bool) -> Result<Line> {
    let (Some(u), Some(w)) = ((p - at).unit(), (q - at).unit()) else {
        return Err(Error::DegenerateTriangle);
    };
    let inner = u + w;
    Line::new(at, if internal { inner } else { inner.perp() })
}

/// The incenter and the three excenters, as meets of the bisectors at B and C.
pub fn bisector_candidates(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Vec<BisectorCandidate> {
    let (a, b, c) = tri.rotated(vertex);
    let mut out = Vec::with_capacity(4);
    for b_internal in [true, false] {
        for c_internal in [true, false] {
            let point = bisector(b, a, c, b_internal).and_then(|lb| {
                let lc = bisector(c, a, b, c_internal)?;
                match intersect_lines(&lb, &lc, tol) {
                    LineIntersection::Point(p) => Ok(p),
                    LineIntersection::Parallel(_) => Err(Error::ParallelBisectors),
                }
            });
            out.push(BisectorCandidate {
                b_internal,
                c_internal,
                point,
            });
        }
    }
    out
}

/// `| |BC_A| − |BC| |` and `| |CB_A| − |BC| |` over `|BC|` for the cevians of `p`.
pub fn candidate_length_residuals(tri: &Triangle, vertex: Vertex, p: Point, tol: Tolerance) -> Result<[f64; 2]> {
    let (a, b, c) = tri.rotated(vertex);
    let cev = inverse_miquel(tri, vertex, p, tol)?;
    let side = b.dist(c);
    Ok([
        (b.dist(a.lerp(b, cev.t_c)) - side).abs() / side,
        (c.dist(a.lerp(c, cev.t_b)) - side).abs() / side,
    ])
}

/// Feet obtained by reflecting C (resp. B) in the foot of the altitude from B (resp. C).
pub fn orthocenter_case(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Result<CenterCaseReport> {
    if (tri.angle(vertex) - std::f64::consts::FRAC_PI_2).abs() <= tol.relative_eps {
        return Err(Error::RightAngleAtVertex);
    }
    let (a, b, c) = tri.rotated(vertex);
    let b_a = Line::through(a, c)?.project(b) * 2.0 - c;
    let c_a = Line::through(a, b)?.project(c) * 2.0 - b;
    let (cevians, config, center_gap, construction_gap) =
        finish(tri, vertex, CenterKind::Orthocenter, (b_a, c_a), tol)?;
    let side = b.dist(c);
    let length_residuals = vec![
        (b.dist(config.b_a) - side).abs() / side,
        (c.dist(config.c_a) - side).abs() / side,
    ];
    Ok(CenterCaseReport {
        kind: CenterKind::Orthocenter,
        cevians,
        config,
        length_residuals,
        center_gap,
        construction_gap,
        extra: None,
    })
}

/// Feet where the perpendicular bisector of BC meets AC and AB.
pub fn circumcenter_case(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Result<CenterCaseReport> {
    let (a, b, c) = tri.rotated(vertex);
    let perp = Line::new(b.midpoint(c), (c - b).perp())?;
    let meet = |p: Point, q: Point| -> Result<Point> {
        intersect_lines(&perp, &Line::through(p, q)?, tol)
            .point()
            .ok_or(Error::BisectorParallelToSide)
    };
    let b_a = meet(a, c)?;
    let c_a = meet(a, b)?;
    let (cevians, config, center_gap, construction_gap) =
        finish(tri, vertex, CenterKind::Circumcenter, (b_a, c_a), tol)?;
    let d = tri.diameter();
    let o = tri.circumcircle().center;
    let length_residuals = vec![
        (b.dist(config.b_a) - c.dist(config.b_a)).abs() / d,
        (c.dist(config.c_a) - b.dist(config.c_a)).abs() / d,
        tri.circumcircle().boundary_distance(config.n) / d,
        Line::through(config.b_a, config.c_a)?.distance(o) / d,
    ];
    Ok(CenterCaseReport {
        kind: CenterKind::Circumcenter,
        cevians,
        config,
        length_residuals,
        center_gap,
        construction_gap,
        extra: Some(config.n),
    })
}

pub fn center_case(tri: &Triangle, vertex: Vertex, kind: CenterKind, tol: Tolerance) -> Result<CenterCaseReport> {
    match kind {
        CenterKind::Incenter => incenter_case(tri, vertex, tol),
        CenterKind::Orthocenter => orthocenter_case(tri, vertex, tol),
        CenterKind::Circumcenter => circumcenter_case(tri, vertex, tol),
    }
}
