//! Key-value report for a single scene.

use std::fmt;

use miquel_core::centers::center_case;
use miquel_core::locus::locus_membership;
use miquel_core::error::CevianSide;
use miquel_core::miquel::{classify_parameter, forward_miquel, inverse_miquel, side_lemma_check};
use miquel_core::special::{isogonal_circle, isogonal_image_line, vertex_line, IsogonalFit};
use miquel_core::{CevianKind, MiquelConfiguration, Result};

use crate::format::{num, point};
use crate::scene::{Payload, Scene};

/// Ordered `key = value` lines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub entries: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.push((key.into(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

fn kind_name(k: Result<CevianKind>) -> String {
    match k {
        Ok(k) => k.to_string(),
        Err(_) => "boundary".into(),
    }
}

fn configuration(r: &mut Report, scene: &Scene, cfg: &MiquelConfiguration) -> Result<()> {
    let tol = scene.tolerance;
    r.push("t_b", num(cfg.cevians.t_b));
    r.push("t_c", num(cfg.cevians.t_c));
    r.push("B_A", point(cfg.b_a));
    r.push("C_A", point(cfg.c_a));
    r.push("N_A", point(cfg.n));
    r.push("M_A", point(cfg.m));
    r.push("concurrency_residual", num(cfg.residual));
    let kb = classify_parameter(cfg.cevians.t_b, CevianSide::B, tol);
    let kc = classify_parameter(cfg.cevians.t_c, CevianSide::C, tol);
    r.push("cevian.B_A", kind_name(kb));
    r.push("cevian.C_A", kind_name(kc));
    r.push("locus", locus_membership(&scene.triangle, scene.vertex, cfg.m, tol).to_string());
    let side = side_lemma_check(cfg, tol)?;
    r.push("side_lemma.m_on_bc", side.m_on_bc.to_string());
    r.push("side_lemma.abcn_concyclic", side.abcn_concyclic.to_string());
    r.push("side_lemma.bc_gap", num(side.bc_gap));
    r.push("side_lemma.concyclic_gap", num(side.concyclic_gap));
    Ok(())
}

/// Runs the construction a scene describes.
pub fn construct(scene: &Scene) -> Result<Report> {
    let (tri, v, tol) = (&scene.triangle, scene.vertex, scene.tolerance);
    let mut r = Report::default();
    r.push("vertex", v.to_string());
    r.push("payload", scene.payload.key());
    match &scene.payload {
        Payload::Cevians(cev) => {
            let cfg = forward_miquel(tri, v, *cev, tol)?;
            configuration(&mut r, scene, &cfg)?;
        }
        Payload::Point(p) => {
            let cev = inverse_miquel(tri, v, *p, tol)?;
            let cfg = forward_miquel(tri, v, cev, tol)?;
            configuration(&mut r, scene, &cfg)?;
            r.push("roundtrip_gap", num(cfg.m.dist(*p) / tri.diameter()));
        }
        Payload::Center(kind) => {
            let rep = center_case(tri, v, *kind, tol)?;
            r.push("center", kind.to_string());
            configuration(&mut r, scene, &rep.config)?;
            r.push("center_gap", num(rep.center_gap));
            r.push("construction_gap", num(rep.construction_gap));
            let residuals: Vec<String> = rep.length_residuals.iter().map(|&x| num(x)).collect();
            r.push("length_residuals", residuals.join(", "));
        }
        Payload::LineAngle(mu0) => {
            let l = vertex_line(tri, v, *mu0)?;
            let image = isogonal_image_line(tri, v, *mu0)?;
            r.push("line.direction", point(l.direction()));
            r.push("image_line.point", point(image.anchor()));
            r.push("image_line.direction", point(image.direction()));
            let fit = isogonal_circle(tri, v, &l, tol)?;
            match fit.fit {
                IsogonalFit::Circle(c) => {
                    r.push("fit", "circle");
                    r.push("fit.center", point(c.center));
                    r.push("fit.radius", num(c.radius));
                }
                IsogonalFit::NearLine(line) => {
                    r.push("fit", "line");
                    r.push("fit.point", point(line.anchor()));
                    r.push("fit.direction", point(line.direction()));
                }
            }
            r.push("fit.samples", fit.samples.len().to_string());
        }
    }
    Ok(r)
}
