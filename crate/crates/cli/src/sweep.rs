//! Sampled comparison of the analytic locus against the inverse map.

use std::fmt::Write;

use miquel_core::locus::{Locus, LocusVerdict};
use miquel_core::miquel::{classify_cevians, inverse_miquel};
use miquel_core::{CevianKind, Error, Point, Tolerance, Triangle, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::format::num;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub min: Point,
    pub max: Point,
    pub samples: usize,
    /// Required clearance from the bounding circles and side lines, as a
    /// fraction of the triangle diameter, for a sample to count.
    pub margin: f64,
    pub seed: u64,
}

impl SweepSpec {
    /// Square of half-width `1.5 R` about the circumcentre.
    pub fn around(tri: &Triangle, samples: usize, margin: f64, seed: u64) -> Self {
        let c = tri.circumcircle();
        let h = Point::new(1.5 * c.radius, 1.5 * c.radius);
        SweepSpec {
            min: c.center - h,
            max: c.center + h,
            samples,
            margin,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.samples < 2 {
            return Err("samples must be at least 2".into());
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err("margin must be a finite non-negative number".into());
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min.x < self.max.x && self.min.y < self.max.y) {
            return Err("bounding box must be finite and non-empty".into());
        }
        Ok(())
    }
}

/// Three quarters of the budget go to a stratified grid over the box, the
/// rest to points offset from a random bounding circle by `10^u · D` with
/// `u` uniform in `[-7, -1]`, which probes the boundary bands at many scales.
pub fn sample_points(spec: &SweepSpec, locus: &Locus, diameter: f64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let k = ((spec.samples * 3 / 4) as f64).sqrt().floor().max(1.0) as usize;
    let (w, h) = ((spec.max.x - spec.min.x) / k as f64, (spec.max.y - spec.min.y) / k as f64);
    let mut out = Vec::with_capacity(spec.samples);
    for j in 0..k {
        for i in 0..k {
            if out.len() == spec.samples {
                break;
            }
            let x = spec.min.x + (i as f64 + rng.random::<f64>()) * w;
            let y = spec.min.y + (j as f64 + rng.random::<f64>()) * h;
            out.push(Point::new(x, y));
        }
    }
    let circles = locus.bounding_circles();
    while out.len() < spec.samples {
        let c = circles[rng.random_range(0..3)];
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let offset = 10f64.powf(rng.random_range(-7.0..-1.0)) * diameter;
        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
        out.push(c.point_at_angle(theta) + Point::from_polar(sign * offset, theta));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub enum Empirical {
    Kinds(CevianKind, CevianKind),
    Failed(Error),
}

impl Empirical {
    pub fn both_internal(&self) -> bool {
        matches!(self, Empirical::Kinds(CevianKind::Internal, CevianKind::Internal))
    }

    fn label(&self) -> String {
        match self {
            Empirical::Kinds(b, c) => format!("{b}/{c}"),
            Empirical::Failed(e) => e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: Point,
    pub verdict: LocusVerdict,
    pub empirical: Empirical,
    pub agree: bool,
    pub in_margin: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub agreeing: usize,
    pub considered: usize,
}

impl SweepResult {
    /// Agreement over margin-respecting samples.
    pub fn rate(&self) -> Option<f64> {
        (self.considered > 0).then(|| self.agreeing as f64 / self.considered as f64)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,x,y,verdict,empirical,agree,in_margin\n");
        for (i, r) in self.rows.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i},{},{},{},{},{},{}",
                num(r.point.x),
                num(r.point.y),
                r.verdict,
                r.empirical.label(),
                r.agree,
                r.in_margin
            );
        }
        let rate = self.rate().map_or("n/a".to_string(), num);
        let _ = writeln!(out, "# agreement,{}/{},{rate}", self.agreeing, self.considered);
        out
    }
}

pub fn classify_point(locus: &Locus, tri: &Triangle, vertex: Vertex, p: Point, margin: f64, tol: Tolerance) -> SweepRow {
    let verdict = locus.classify(p);
    let empirical = match inverse_miquel(tri, vertex, p, tol).and_then(|c| classify_cevians(c, tol)) {
        Ok((b, c)) => Empirical::Kinds(b, c),
        Err(e) => Empirical::Failed(e),
    };
    SweepRow {
        point: p,
        verdict,
        agree: verdict.is_member() == empirical.both_internal(),
        empirical,
        in_margin: locus.clearance(p) >= margin * tri.diameter(),
    }
}

pub fn sweep(tri: &Triangle, vertex: Vertex, spec: &SweepSpec, tol: Tolerance) -> miquel_core::Result<SweepResult> {
    let locus = Locus::new(tri, vertex, tol)?;
    let points = sample_points(spec, &locus, tri.diameter());
    let rows: Vec<SweepRow> = points
        .par_iter()
        .map(|&p| classify_point(&locus, tri, vertex, p, spec.margin, tol))
        .collect();
    let considered = rows.iter().filter(|r| r.in_margin).count();
    let agreeing = rows.iter().filter(|r| r.in_margin && r.agree).count();
    Ok(SweepResult {
        rows,
        agreeing,
        considered,
    })
}
