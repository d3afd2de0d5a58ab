//! Auxiliary circles, the internal-cevian locus and the centre-circle relations.

use std::fmt;

use crate::error::{Error, Result};
use crate::geom::{concyclic_residual, tangent_circle_through, Circle, Line, Point, Tolerance, Triangle, Vertex};

/// Auxiliary circles and centres of a triangle seen from one vertex.
///
/// `omega_ab` touches line AB at A and passes through C; `omega_ac` touches
/// line AC at A and passes through B. They are the limits of `ω_{ACC_A}` as
/// `C_A → A` and of `ω_{ABB_A}` as `B_A → A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryData {
    pub omega_ab: Circle,
    pub omega_ac: Circle,
    pub o_ab: Point,
    pub o_ac: Point,
    /// Second common point of the two auxiliary circles.
    pub main_centre: Point,
    /// Line through the vertex and the main centre.
    pub axis: Line,
}

pub fn auxiliary_data(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Result<AuxiliaryData> {
    let (a, b, c) = tri.rotated(vertex);
    let omega_ab = tangent_circle_through(&Line::through(a, b)?, a, c, tol)?;
    let omega_ac = tangent_circle_through(&Line::through(a, c)?, a, b, tol)?;
    let main_centre = omega_ab.second_common_point(&omega_ac, a)?;
    if main_centre.dist(a) <= tol.effective(tri.diameter()) {
        return Err(Error::DegenerateTriangle);
    }
    Ok(AuxiliaryData {
        omega_ab,
        omega_ac,
        o_ab: omega_ab.center,
        o_ac: omega_ac.center,
        main_centre,
        axis: Line::through(a, main_centre)?,
    })
}

/// Classification of a candidate Miquel point against the internal-cevian locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocusVerdict {
    Member,
    ExcludedOutsideCircumdisk,
    ExcludedInAuxDiskAB,
    ExcludedInAuxDiskAC,
    ExcludedInBothAuxDisks,
    /// Within the tolerance band of one of the three bounding circles.
    Boundary,
    /// On line AB or AC, where no cevian pair exists.
    Inadmissible,
}

impl LocusVerdict {
    pub fn is_member(self) -> bool {
        self == LocusVerdict::Member
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LocusVerdict::Member => "member",
            LocusVerdict::ExcludedOutsideCircumdisk => "excluded_outside_circumdisk",
            LocusVerdict::ExcludedInAuxDiskAB => "excluded_in_aux_disk_ab",
            LocusVerdict::ExcludedInAuxDiskAC => "excluded_in_aux_disk_ac",
            LocusVerdict::ExcludedInBothAuxDisks => "excluded_in_both_aux_disks",
            LocusVerdict::Boundary => "boundary",
            LocusVerdict::Inadmissible => "inadmissible",
        }
    }
}

impl fmt::Display for LocusVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The region of Miquel points whose cevians are both internal: the open
/// circumdisk with both closed auxiliary disks removed.
///
/// Whether a cevian from C is internal depends only on which side of
/// `omega_ab` and of the circumcircle the Miquel point lies (the circles
/// through A and C sweep the plane as `C_A` runs along AB). The C-cevian is
/// internal exactly on the symmetric difference of the circumdisk and the
/// AB auxiliary disk, and likewise for B. The lens shared by the two
/// auxiliary disks lies inside the circumdisk, so the intersection of the
/// two conditions is the circumdisk minus the union of the auxiliary disks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Locus {
    pub circumcircle: Circle,
    pub aux: AuxiliaryData,
    lines: [Line; 2],
    band: f64,
}

impl Locus {
    pub fn new(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Result<Self> {
        let (a, b, c) = tri.rotated(vertex);
        Ok(Locus {
            circumcircle: tri.circumcircle(),
            aux: auxiliary_data(tri, vertex, tol)?,
            lines: [Line::through(a, b)?, Line::through(a, c)?],
            band: tol.effective(tri.diameter()),
        })
    }

    pub fn bounding_circles(&self) -> [Circle; 3] {
        [self.circumcircle, self.aux.omega_ab, self.aux.omega_ac]
    }

    /// Smallest distance to the two side lines and the three bounding circles.
    pub fn clearance(&self, p: Point) -> f64 {
        let lines = self.lines.iter().map(|l| l.distance(p));
        let circles = self.bounding_circles().into_iter().map(|c| c.boundary_distance(p));
        lines.chain(circles).fold(f64::INFINITY, f64::min)
    }

    pub fn classify(&self, p: Point) -> LocusVerdict {
        if self.lines.iter().any(|l| l.distance(p) <= self.band) {
            return LocusVerdict::Inadmissible;
        }
        let signed = self.bounding_circles().map(|c| c.signed_distance(p));
        if signed.iter().any(|d| d.abs() <= self.band) {
            return LocusVerdict::Boundary;
        }
        let [circum, ab, ac] = signed.map(|d| d < 0.0);
        match (circum, ab, ac) {
            (false, _, _) => LocusVerdict::ExcludedOutsideCircumdisk,
            (true, true, true) => LocusVerdict::ExcludedInBothAuxDisks,
            (true, true, false) => LocusVerdict::ExcludedInAuxDiskAB,
            (true, false, true) => LocusVerdict::ExcludedInAuxDiskAC,
            (true, false, false) => LocusVerdict::Member,
        }
    }
}

pub fn locus_membership(tri: &Triangle, vertex: Vertex, p: Point, tol: Tolerance) -> LocusVerdict {
    match Locus::new(tri, vertex, tol) {
        Ok(locus) => locus.classify(p),
        Err(_) => LocusVerdict::Inadmissible,
    }
}

/// Residuals of the relations between `O_{A,B}`, `O_{A,C}`, `I_A` and the circumcentre `O`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentreCircleResiduals {
    /// Concyclicity residual of the four centres.
    pub concyclic: f64,
    /// Angle between `O_{A,B}O_{A,C}` and `OI_A`.
    pub parallel_angle: f64,
    /// Deviation of the angle between `OI_A` and `AI_A` from a right angle.
    pub perp_angle: f64,
}

impl CentreCircleResiduals {
    pub fn max(&self) -> f64 {
        self.concyclic.max(self.parallel_angle).max(self.perp_angle)
    }
}

pub fn centre_circle_residuals(tri: &Triangle, vertex: Vertex, tol: Tolerance) -> Result<CentreCircleResiduals> {
    let aux = auxiliary_data(tri, vertex, tol)?;
    let o = tri.circumcircle().center;
    if o.dist(aux.main_centre) <= tol.effective(tri.diameter()) {
        return Err(Error::DegenerateOI);
    }
    let oi = Line::through(o, aux.main_centre)?;
    let centres = Line::through(aux.o_ab, aux.o_ac)?;
    Ok(CentreCircleResiduals {
        concyclic: concyclic_residual([aux.o_ab, aux.o_ac, aux.main_centre, o])?,
        parallel_angle: centres.angle_to(&oi),
        perp_angle: std::f64::consts::FRAC_PI_2 - oi.angle_to(&aux.axis),
    })
}
